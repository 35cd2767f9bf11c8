#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cylindex/symbol_core.hpp"
#include "cylindex/symbol_grid.hpp"
#include "cylindex/winding.hpp"

namespace cylindex {

/// Finite Fourier window {|m| ≤ R} (dim 1) or {|m|, |n| ≤ R} (dim 2).
/// Mode (m, n) ↦ basis block (m+R)(2R+1) + (n+R); each block holds k components.
struct TruncationWindow {
  int radius = 1;
  int dim = 1;

  Eigen::Index side() const { return 2 * radius + 1; }
  Eigen::Index modes() const { return dim == 1 ? side() : side() * side(); }
  Eigen::Index mode_index(int m, int n = 0) const {
    return dim == 1 ? Eigen::Index(m + radius) : Eigen::Index(m + radius) * side() + (n + radius);
  }
  bool contains(int m, int n = 0) const {
    return std::abs(m) <= radius && (dim == 1 ? n == 0 : std::abs(n) <= radius);
  }
};

/// Compression of a lattice operator to a window, in the basis e^{i(mθ+nx)} ⊗ ℂᵏ.
struct TruncatedOperator {
  TruncationWindow window;
  int k = 1;
  Matrix matrix;
  std::string provenance;
};

/// A banded operator on ℓ²(ℤ^d)⊗ℂᵏ: entry ((m′,n′),(m,n)) vanishes once
/// max(|m′−m|, |n′−n|) > bandwidth.
struct LatticeAssembler {
  int dim = 1;
  int k = 1;
  int bandwidth = 0;
  std::string provenance;
  std::function<TruncatedOperator(const TruncationWindow&)> assemble;

  /// Assembler of the Hilbert-space adjoint (conjugate transpose of every window).
  LatticeAssembler adjoint() const;
};

// -- assembly ----------------------------------------------------------------

TruncatedOperator assemble_boundary_matrix(const BoundaryOperatorSpec& op, const TruncationWindow& w);
LatticeAssembler boundary_assembler(const BoundaryOperatorSpec& op);

/// Zero-order quantization: entry ((m′,n′),(m,n)) is the base Fourier
/// coefficient at (m′−m, n′−n) of a(·, ·, ψ(m,n)), where ψ(m,n) is the angle of
/// (m, n) and ψ(0,0) = 0 (dim 1: τ = sign m, sign 0 = +1).
TruncatedOperator quantize_symbol(const FourierSymbol& symbol, const TruncationWindow& w);
TruncatedOperator quantize_symbol(const BoundarySymbol& symbol, const TruncationWindow& w);
TruncatedOperator quantize_symbol(const SymbolGrid3& grid, const TruncationWindow& w);
TruncatedOperator quantize_symbol(const LoopSample& f_minus, const LoopSample& f_plus, const TruncationWindow& w);

/// Throws SingularSymbol unless the symbol is invertible on a sampling grid.
LatticeAssembler symbol_assembler(const FourierSymbol& symbol);

/// Exact symbol with the given loops on τ = −1 and τ = +1:
/// (f₊ + f₋)/2 + cos ψ·(f₊ − f₋)/2, loops expanded by DFT.
FourierSymbol loop_pair_symbol(const LoopSample& f_minus, const LoopSample& f_plus);

/// Smallest singular value of the symbol over a sampling grid (n per axis;
/// the two fibers τ = ±1 for a point base).
double fourier_symbol_margin(const FourierSymbol& symbol, int n = 32);

// -- index -------------------------------------------------------------------

struct OracleOptions {
  /// Kernel threshold, relative to the largest singular value.
  double tol = 1e-6;
  /// Required ratio between the smallest nonzero and the largest zero singular value.
  double gap = 1e3;
  bool allow_large = false;
  Eigen::Index max_dimension = 6000;

  /// Defaults per lattice dimension: radii {32, 64} and tol 1e-6 on ℤ,
  /// radii {12, 16} and tol 1e-4 on ℤ².
  static OracleOptions defaults(int dim);
  static std::vector<int> default_radii(int dim);
};

/// Per-radius singular value summary.
struct RadiusRecord {
  int radius = 0;
  Eigen::Index dim = 0;
  double s_max = 0.0;
  std::vector<double> smallest;          ///< five smallest singular values of A, ascending
  std::vector<double> smallest_adjoint;  ///< five smallest singular values of A*, ascending
  int ker = 0;
  int coker = 0;
  /// Worst of the A and A* ratios: smallest nonzero over largest zero singular
  /// value, or over the threshold when there are no zeros (∞ when exact).
  double gap_ratio = 0.0;
  /// Every side with zeros separates them from the rest by options.gap.
  bool gap_ok = false;

  int index() const { return ker - coker; }
};

/// Kernel counting on the window of radius R uses the lossless compressions
/// P_{R+b}·A·P_R and P_{R+b}·A*·P_R (b = bandwidth): their null spaces
/// converge to ker A and ker A*, with no spurious truncation-edge modes.
RadiusRecord analyze_radius(const LatticeAssembler& assembler, int radius, const OracleOptions& options);

std::vector<RadiusRecord> singular_value_sweep(const LatticeAssembler& assembler, std::span<const int> radii,
                                               const OracleOptions& options);

struct IndexResult {
  int index = 0;
  int ker = 0;
  int coker = 0;
  std::vector<RadiusRecord> records;
};

/// Fredholm index by the finite-section sweep. Every radius must show the
/// spectral gap (NoSpectralGap), and the last two radii must agree on the
/// index and on the kernel counts (Unstable).
IndexResult numerical_index(const LatticeAssembler& assembler, std::span<const int> radii,
                            const OracleOptions& options);

struct FredholmCheck {
  bool elliptic = false;
  double margin = 0.0;
  bool fredholm = false;
  /// One entry per side (minus, plus): empty when invertible, else the reason.
  std::array<std::string, 2> boundary_diagnostics;
};

/// Total-symbol Fredholm criterion: uniform ellipticity and invertibility of
/// both boundary operators (full order) at the configured truncation.
FredholmCheck check_total_fredholm(const OperatorSpec& spec, const EllipticityGrid& grid = {},
                                   std::span<const int> radii = {}, std::optional<OracleOptions> options = {});

// -- index idempotent --------------------------------------------------------

/// [[2ab − (ab)², a(2 − ba)(1 − ba)], [(1 − ba)b, (1 − ba)²]] for a: r×c, b: c×r.
/// The top-left block acts on the r-dimensional target space of a.
template <typename DerivedA, typename DerivedB>
Matrix index_idempotent(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows())
    fail(ErrorKind::SizeMismatch, "index_idempotent needs a: r×c and b: c×r");
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  const Matrix ab = a * b;
  const Matrix ba = b * a;
  const Matrix one_r = Matrix::Identity(r, r);
  const Matrix one_c = Matrix::Identity(c, c);
  const Matrix defect = one_c - ba;

  Matrix p(r + c, r + c);
  p.topLeftCorner(r, r) = 2.0 * ab - ab * ab;
  p.topRightCorner(r, c) = a * (2.0 * one_c - ba) * defect;
  p.bottomLeftCorner(c, r) = defect * b;
  p.bottomRightCorner(c, c) = defect * defect;
  return p;
}

/// trace(p) − k_block: the class [p]₀ − [diag(1_{k_block}, 0)]₀ as an integer.
/// Throws NotIdempotent unless ‖p² − p‖ < idempotent_tol.
double idempotent_defect_trace(const Matrix& p, Eigen::Index k_block, double idempotent_tol = 1e-8);

}  // namespace cylindex
