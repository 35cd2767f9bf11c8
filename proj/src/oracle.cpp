#include "cylindex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace cylindex {

namespace {

void check_window(const TruncationWindow& w, BaseManifold base) {
  if (w.radius < 0) fail(ErrorKind::InvalidArgument, "window radius must be non-negative");
  if (w.dim != lattice_dimension(base))
    fail(ErrorKind::DimensionMismatch, "window dimension " + std::to_string(w.dim) + " does not match the " +
                                           std::string(to_string(base)) + " base");
}

// Visits every mode (m, n) of the window in basis order.
template <typename F>
void for_each_mode(const TruncationWindow& w, F&& f) {
  const int r = w.radius;
  for (int m = -r; m <= r; ++m) {
    if (w.dim == 1) {
      f(m, 0);
      continue;
    }
    for (int n = -r; n <= r; ++n) f(m, n);
  }
}

double int_pow(double base, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

double fiber_angle(int dim, int m, int n) {
  if (dim == 1) return m >= 0 ? 0.0 : kPi;
  if (m == 0 && n == 0) return 0.0;
  return std::atan2(static_cast<double>(n), static_cast<double>(m));
}

// Loop coefficients by DFT, Nyquist mode split between ±n/2.
std::map<int, Matrix> loop_coefficients(const LoopSample& loop) {
  const int n = loop.size();
  const int k = loop.k();
  std::map<int, Matrix> out;
  for (int a = 0; a < n; ++a) {
    Matrix c = Matrix::Zero(k, k);
    for (int i = 0; i < n; ++i) c += std::polar(1.0 / n, -kTwoPi * a * i / n) * loop.values[static_cast<std::size_t>(i)];
    const int freq = a <= n / 2 ? a : a - n;
    if (n % 2 == 0 && 2 * a == n) {
      out[freq] = 0.5 * c;
      out[-freq] = 0.5 * c;
    } else {
      out[freq] = c;
    }
  }
  return out;
}

struct SpectrumCount {
  int zeros = 0;
  double ratio = 0.0;
  bool ok = true;
};

// s sorted descending. Zeros are values below tol·s_max; the gap ratio compares
// the smallest nonzero value against the largest zero. Without zeros it is
// reported against the threshold, for audit only.
SpectrumCount classify(const RealVector& s, double s_max, const OracleOptions& options) {
  SpectrumCount out;
  const auto n = s.size();
  if (n == 0) {
    out.ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  const double threshold = options.tol * s_max;
  for (Eigen::Index i = 0; i < n; ++i)
    if (s(i) < threshold || s_max == 0.0) ++out.zeros;
  if (out.zeros == n) {
    out.ratio = std::numeric_limits<double>::infinity();
  } else if (out.zeros == 0) {
    out.ratio = threshold > 0.0 ? s(n - 1) / threshold : std::numeric_limits<double>::infinity();
  } else {
    const double largest_zero = s(n - out.zeros);
    const double smallest_nonzero = s(n - out.zeros - 1);
    out.ratio = largest_zero > 0.0 ? smallest_nonzero / largest_zero : std::numeric_limits<double>::infinity();
    out.ok = out.ratio >= options.gap;
  }
  return out;
}

std::vector<double> smallest_values(const RealVector& s, std::size_t count) {
  std::vector<double> out;
  for (Eigen::Index i = s.size() - 1; i >= 0 && out.size() < count; --i) out.push_back(s(i));
  return out;
}

}  // namespace

// -- assembly ----------------------------------------------------------------

LatticeAssembler LatticeAssembler::adjoint() const {
  LatticeAssembler out = *this;
  out.provenance = provenance + " (adjoint)";
  auto inner = assemble;
  out.assemble = [inner](const TruncationWindow& w) {
    TruncatedOperator t = inner(w);
    t.matrix = t.matrix.adjoint().eval();
    t.provenance += " (adjoint)";
    return t;
  };
  return out;
}

TruncatedOperator assemble_boundary_matrix(const BoundaryOperatorSpec& op, const TruncationWindow& w) {
  check_window(w, op.base);
  const int k = op.k;
  TruncatedOperator out{w, k, Matrix::Zero(w.modes() * k, w.modes() * k),
                        "boundary operator (" + std::string(to_string(op.side)) + ")"};
  for_each_mode(w, [&](int m, int n) {
    const Eigen::Index col = w.mode_index(m, n) * k;
    const double bracket = 1.0 + double(m) * m + double(n) * n;
    for (const auto& term : op.terms) {
      const double mult = int_pow(m, term.key.j) * int_pow(n, term.key.alpha) * std::pow(bracket, -0.5 * term.key.lambda);
      if (mult == 0.0) continue;
      for (const auto& [pq, c] : term.coeff.coeffs()) {
        const int mr = m + pq.first;
        const int nr = n + pq.second;
        if (!w.contains(mr, nr)) continue;
        out.matrix.block(w.mode_index(mr, nr) * k, col, k, k) += mult * c;
      }
    }
  });
  return out;
}

LatticeAssembler boundary_assembler(const BoundaryOperatorSpec& op) {
  LatticeAssembler a;
  a.dim = lattice_dimension(op.base);
  a.k = op.k;
  a.bandwidth = op.bandwidth();
  a.provenance = "boundary operator (" + std::string(to_string(op.side)) + ")";
  a.assemble = [op](const TruncationWindow& w) { return assemble_boundary_matrix(op, w); };
  return a;
}

TruncatedOperator quantize_symbol(const FourierSymbol& symbol, const TruncationWindow& w) {
  check_window(w, symbol.base());
  const int k = symbol.k();
  std::set<std::pair<int, int>> support;
  for (const auto& [key, c] : symbol.coeffs()) support.emplace(key[0], key[1]);

  TruncatedOperator out{w, k, Matrix::Zero(w.modes() * k, w.modes() * k), "quantized symbol"};
  for_each_mode(w, [&](int m, int n) {
    const Eigen::Index col = w.mode_index(m, n) * k;
    const double psi = fiber_angle(w.dim, m, n);
    for (const auto& [p, q] : support) {
      if (!w.contains(m + p, n + q)) continue;
      out.matrix.block(w.mode_index(m + p, n + q) * k, col, k, k) += symbol.fiber_coefficient(p, q, psi);
    }
  });
  return out;
}

TruncatedOperator quantize_symbol(const BoundarySymbol& symbol, const TruncationWindow& w) {
  return quantize_symbol(symbol.to_fourier(), w);
}

TruncatedOperator quantize_symbol(const SymbolGrid3& grid, const TruncationWindow& w) {
  return quantize_symbol(interpolate(grid), w);
}

TruncatedOperator quantize_symbol(const LoopSample& f_minus, const LoopSample& f_plus, const TruncationWindow& w) {
  return quantize_symbol(loop_pair_symbol(f_minus, f_plus), w);
}

FourierSymbol loop_pair_symbol(const LoopSample& f_minus, const LoopSample& f_plus) {
  if (f_minus.size() == 0 || f_plus.size() == 0) fail(ErrorKind::InvalidArgument, "empty loop");
  if (f_minus.k() != f_plus.k()) fail(ErrorKind::MatrixSizeMismatch, "loops differ in matrix size");
  const int k = f_minus.k();
  FourierSymbol out(BaseManifold::Point, k);
  // cos ψ = (e^{iψ} + e^{−iψ})/2
  for (const auto& [p, c] : loop_coefficients(f_plus)) {
    out.add(p, 0, 0, 0.5 * c);
    out.add(p, 0, 1, 0.25 * c);
    out.add(p, 0, -1, 0.25 * c);
  }
  for (const auto& [p, c] : loop_coefficients(f_minus)) {
    out.add(p, 0, 0, 0.5 * c);
    out.add(p, 0, 1, -0.25 * c);
    out.add(p, 0, -1, -0.25 * c);
  }
  return out.pruned(1e-13);
}

double fourier_symbol_margin(const FourierSymbol& symbol, int n) {
  if (n < 4) fail(ErrorKind::InvalidArgument, "margin grid needs at least 4 points per axis");
  double margin = std::numeric_limits<double>::infinity();
  if (symbol.base() == BaseManifold::Point) {
    for (int i = 0; i < n; ++i)
      for (double psi : {0.0, kPi}) margin = std::min(margin, smallest_singular_value(symbol(grid_angle(i, n), 0.0, psi)));
    return margin;
  }
  const SymbolGrid3 grid = sample(symbol, {n, n, n});
  for (Eigen::Index col = 0; col < grid.points(); ++col)
    margin = std::min(margin, smallest_singular_value(Eigen::Map<const Matrix>(grid.data().col(col).data(), grid.k(), grid.k())));
  return margin;
}

LatticeAssembler symbol_assembler(const FourierSymbol& symbol) {
  const double margin = fourier_symbol_margin(symbol);
  if (margin <= 1e-8)
    fail(ErrorKind::SingularSymbol, "symbol is not invertible on its sampling grid (margin " + std::to_string(margin) + ")");
  LatticeAssembler a;
  a.dim = lattice_dimension(symbol.base());
  a.k = symbol.k();
  a.bandwidth = symbol.bandwidth();
  a.provenance = "quantized symbol";
  a.assemble = [symbol](const TruncationWindow& w) { return quantize_symbol(symbol, w); };
  return a;
}

// -- index -------------------------------------------------------------------

OracleOptions OracleOptions::defaults(int dim) {
  OracleOptions o;
  o.tol = dim == 1 ? 1e-6 : 1e-4;
  return o;
}

std::vector<int> OracleOptions::default_radii(int dim) {
  return dim == 1 ? std::vector<int>{32, 64} : std::vector<int>{12, 16};
}

RadiusRecord analyze_radius(const LatticeAssembler& assembler, int radius, const OracleOptions& options) {
  if (radius < 1) fail(ErrorKind::InvalidArgument, "radii must be positive");
  const TruncationWindow inner{radius, assembler.dim};
  const TruncationWindow outer{radius + assembler.bandwidth, assembler.dim};
  const Eigen::Index k = assembler.k;
  const Eigen::Index outer_dim = outer.modes() * k;
  if (outer_dim > options.max_dimension && !options.allow_large)
    fail(ErrorKind::WindowTooLarge, "radius " + std::to_string(radius) + " needs a " + std::to_string(outer_dim) +
                                        "-dimensional window (cap " + std::to_string(options.max_dimension) +
                                        "); pass allow_large to override");

  const Matrix full = assembler.assemble(outer).matrix;
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(inner.modes() * k));
  for_each_mode(inner, [&](int m, int n) {
    for (Eigen::Index c = 0; c < k; ++c) keep.push_back(outer.mode_index(m, n) * k + c);
  });

  const Matrix a_tall = full(Eigen::all, keep);
  const Matrix a_star_tall = full(keep, Eigen::all).adjoint();
  const RealVector s = Eigen::BDCSVD<Matrix>(a_tall).singularValues();
  const RealVector s_star = Eigen::BDCSVD<Matrix>(a_star_tall).singularValues();

  RadiusRecord rec;
  rec.radius = radius;
  rec.dim = inner.modes() * k;
  rec.s_max = std::max(s.size() ? s(0) : 0.0, s_star.size() ? s_star(0) : 0.0);
  rec.smallest = smallest_values(s, 5);
  rec.smallest_adjoint = smallest_values(s_star, 5);
  const SpectrumCount c = classify(s, rec.s_max, options);
  const SpectrumCount c_star = classify(s_star, rec.s_max, options);
  rec.ker = c.zeros;
  rec.coker = c_star.zeros;
  rec.gap_ratio = std::min(c.ratio, c_star.ratio);
  rec.gap_ok = c.ok && c_star.ok;
  return rec;
}

std::vector<RadiusRecord> singular_value_sweep(const LatticeAssembler& assembler, std::span<const int> radii,
                                               const OracleOptions& options) {
  std::vector<RadiusRecord> out;
  for (int r : radii) out.push_back(analyze_radius(assembler, r, options));
  return out;
}

IndexResult numerical_index(const LatticeAssembler& assembler, std::span<const int> radii,
                            const OracleOptions& options) {
  if (radii.size() < 2) fail(ErrorKind::InvalidArgument, "the index sweep needs at least two radii");
  if (!std::is_sorted(radii.begin(), radii.end()))
    fail(ErrorKind::InvalidArgument, "radii must be increasing");
  IndexResult out;
  out.records = singular_value_sweep(assembler, radii, options);
  for (const auto& rec : out.records)
    if (!rec.gap_ok)
      fail(ErrorKind::NoSpectralGap, assembler.provenance + ": gap ratio " + std::to_string(rec.gap_ratio) +
                                         " at radius " + std::to_string(rec.radius) + " is below " +
                                         std::to_string(options.gap));
  const auto& last = out.records.back();
  const auto& prev = out.records[out.records.size() - 2];
  if (last.index() != prev.index() || last.ker != prev.ker || last.coker != prev.coker)
    fail(ErrorKind::Unstable, assembler.provenance + ": (ker, coker) = (" + std::to_string(prev.ker) + ", " +
                                  std::to_string(prev.coker) + ") at radius " + std::to_string(prev.radius) + " but (" +
                                  std::to_string(last.ker) + ", " + std::to_string(last.coker) + ") at radius " +
                                  std::to_string(last.radius));
  out.index = last.index();
  out.ker = last.ker;
  out.coker = last.coker;
  return out;
}

FredholmCheck check_total_fredholm(const OperatorSpec& spec, const EllipticityGrid& grid, std::span<const int> radii,
                                   std::optional<OracleOptions> options) {
  FredholmCheck out;
  const EllipticityResult e = check_uniform_ellipticity(spec, grid);
  out.elliptic = e.elliptic;
  out.margin = e.margin;
  if (!e.elliptic) {
    out.boundary_diagnostics = {"principal symbol not elliptic", "principal symbol not elliptic"};
    return out;
  }
  const int dim = lattice_dimension(spec.base());
  const OracleOptions opts = options.value_or(OracleOptions::defaults(dim));
  const std::vector<int> default_r = OracleOptions::default_radii(dim);
  const std::span<const int> r = radii.empty() ? std::span<const int>(default_r) : radii;

  bool all_invertible = true;
  for (Side side : {Side::Minus, Side::Plus}) {
    std::string& diag = out.boundary_diagnostics[side == Side::Minus ? 0 : 1];
    try {
      const IndexResult res = numerical_index(boundary_assembler(boundary_operator(spec, side, true)), r, opts);
      if (res.ker != 0 || res.coker != 0) {
        diag = "not invertible: (ker, coker) = (" + std::to_string(res.ker) + ", " + std::to_string(res.coker) + ")";
        all_invertible = false;
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NoSpectralGap && err.kind() != ErrorKind::Unstable) throw;
      diag = err.what();
      all_invertible = false;
    }
  }
  out.fredholm = all_invertible;
  return out;
}

double idempotent_defect_trace(const Matrix& p, Eigen::Index k_block, double idempotent_tol) {
  if (p.rows() != p.cols()) fail(ErrorKind::SizeMismatch, "idempotent must be square");
  if (k_block < 0 || k_block > p.rows()) fail(ErrorKind::SizeMismatch, "reference block exceeds the idempotent");
  const double defect = (p * p - p).norm();
  if (defect >= idempotent_tol)
    fail(ErrorKind::NotIdempotent, "‖p² − p‖ = " + std::to_string(defect));
  return p.trace().real() - static_cast<double>(k_block);
}

}  // namespace cylindex
