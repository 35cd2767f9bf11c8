#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <vector>

#include "cylindex/fourier.hpp"

namespace cylindex {

enum class Side { Minus, Plus };

constexpr std::string_view to_string(Side s) { return s == Side::Minus ? "minus" : "plus"; }

/// Periodic limits a⁺ (t → +∞) and a⁻ (t → −∞) of one coefficient.
/// The decaying remainder and the cutoffs are not stored: nothing computed
/// here depends on them.
struct SemiPeriodicCoefficient {
  PeriodicFunction plus;
  PeriodicFunction minus;

  const PeriodicFunction& on(Side s) const { return s == Side::Plus ? plus : minus; }

  static SemiPeriodicCoefficient same(const PeriodicFunction& f) { return {f, f}; }
};

/// Identifies the term a_{j,α}·D_t^j·D_x^α·Λ^λ of an operator spec.
///
/// λ defaults to the spec order N, giving the classical form L·Λᴺ. Terms
/// with λ < N describe further summands L'·Λ^λ of the same operator, so a
/// spec denotes a finite sum Σ_λ L_λ·Λ^λ. A term contributes to the
/// principal symbol iff j + α = λ.
struct TermKey {
  int j = 0;
  int alpha = 0;
  int lambda = 0;

  bool top_order() const { return j + alpha == lambda; }
  auto operator<=>(const TermKey&) const = default;
};

/// A matrix-valued semi-periodic operator on ℝ×B described by the periodic
/// limits of its coefficients.
class OperatorSpec {
 public:
  OperatorSpec(BaseManifold base, int k, int order);

  /// Adds a term with λ = order. Coefficients of a repeated key accumulate.
  OperatorSpec& add_term(int j, int alpha, const SemiPeriodicCoefficient& c);
  OperatorSpec& add_term(TermKey key, const SemiPeriodicCoefficient& c);

  BaseManifold base() const { return base_; }
  int k() const { return k_; }
  int order() const { return order_; }
  const std::map<TermKey, SemiPeriodicCoefficient>& terms() const { return terms_; }

  /// At least one stored term has j + α = λ. A spec without one has an
  /// identically vanishing principal symbol and is reported non-elliptic.
  bool has_top_order_term() const;

  /// Exchanges the plus and minus limits of every coefficient.
  OperatorSpec swapped_sides() const;
  /// Replaces every coefficient by its pointwise conjugate transpose.
  OperatorSpec adjoint_family() const;

  friend OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b);

 private:
  BaseManifold base_;
  int k_;
  int order_;
  std::map<TermKey, SemiPeriodicCoefficient> terms_;
};

/// Term-wise product a_{κ}a'_{κ'} ↦ key (j+j', α+α', λ+λ'). Its principal
/// symbol is the pointwise product of the two principal symbols; the
/// operator differs from the composition by a compact commutator term.
OperatorSpec compose(const OperatorSpec& a, const OperatorSpec& b);

/// A point (θ, x, τ, ξ) of S*(S¹×B). For a point base x and ξ are ignored and
/// τ must be ±1.
struct CospherePoint {
  double theta = 0.0;
  double x = 0.0;
  double tau = 1.0;
  double xi = 0.0;

  static CospherePoint on_fiber(double theta, double x, double psi) {
    return {theta, x, std::cos(psi), std::sin(psi)};
  }
};

/// Restriction f± of the extended principal symbol to t = ±∞.
class BoundarySymbol {
 public:
  struct Term {
    int j;
    int alpha;
    PeriodicFunction coeff;
  };

  BoundarySymbol(Side side, BaseManifold base, int k, std::vector<Term> terms);

  Side side() const { return side_; }
  BaseManifold base() const { return base_; }
  int k() const { return k_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Σ a±_{j,α}(θ,x)·τ^j·ξ^α.
  Matrix operator()(const CospherePoint& pt) const;

  /// Exact Fourier expansion, with τ^j ξ^α expanded in e^{irψ}.
  FourierSymbol to_fourier() const;

 private:
  Side side_;
  BaseManifold base_;
  int k_;
  std::vector<Term> terms_;
};

/// Γ_A(1,±1) = Σ a±_{j,α}(θ,x)·D_θ^j·D_x^α·(1 + D_θ² + D_x²)^{−λ/2} on L²(S¹×B)^k.
struct BoundaryOperatorSpec {
  struct Term {
    TermKey key;
    PeriodicFunction coeff;
  };

  Side side = Side::Plus;
  BaseManifold base = BaseManifold::Point;
  int k = 1;
  bool full_order = true;
  std::vector<Term> terms;
  /// Invertibility margin of the principal symbol; 0 when the top-order sum is empty.
  double symbol_margin = 0.0;
  bool elliptic = false;

  int bandwidth() const;
  bool is_zero() const;
};

struct EllipticityGrid {
  int n_theta = 64;
  int n_x = 64;
  int n_fiber = 64;
  double tol = 1e-8;
};

struct EllipticityResult {
  bool elliptic = false;
  double margin = 0.0;
};

Matrix evaluate_principal_symbol(const OperatorSpec& spec, Side side, const CospherePoint& pt);

/// Minimum over both boundary fibers and all grid points of the smallest
/// singular value of the principal symbol. Interior t is not examined.
EllipticityResult check_uniform_ellipticity(const OperatorSpec& spec, const EllipticityGrid& grid = {});

/// Margin of one boundary symbol over the grid.
double symbol_margin(const BoundarySymbol& symbol, const EllipticityGrid& grid = {});

BoundarySymbol boundary_symbol(const OperatorSpec& spec, Side side);

BoundaryOperatorSpec boundary_operator(const OperatorSpec& spec, Side side, bool full_order);

void validate(const CospherePoint& pt, BaseManifold base);

}  // namespace cylindex
