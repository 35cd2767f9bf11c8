#include "cylindex/symbol_core.hpp"

#include <algorithm>
#include <limits>

namespace cylindex {

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_coefficient(const PeriodicFunction& f, BaseManifold base, int k) {
  if (f.k() != k) fail(ErrorKind::MatrixSizeMismatch, "coefficient matrix size differs from spec k");
  if (f.base() != base) fail(ErrorKind::InvalidArgument, "coefficient base manifold differs from spec base");
}

/// Laurent polynomial in e^{iψ} equal to cos^j ψ · sin^α ψ.
std::map<int, Scalar> fiber_monomial(int j, int alpha) {
  std::map<int, Scalar> poly{{0, 1.0}};
  auto times = [&poly](Scalar up, Scalar down) {
    std::map<int, Scalar> next;
    for (const auto& [r, c] : poly) {
      next[r + 1] += c * up;
      next[r - 1] += c * down;
    }
    poly = std::move(next);
  };
  const Scalar i(0.0, 1.0);
  for (int n = 0; n < j; ++n) times(0.5, 0.5);
  for (int n = 0; n < alpha; ++n) times(0.5 / i, -0.5 / i);
  return poly;
}

}  // namespace

// ---------------------------------------------------------------------------
// OperatorSpec

OperatorSpec::OperatorSpec(BaseManifold base, int k, int order) : base_(base), k_(k), order_(order) {
  if (k <= 0) fail(ErrorKind::InvalidArgument, "k must be positive");
  if (order < 0) fail(ErrorKind::InvalidArgument, "order N must be nonnegative");
}

OperatorSpec& OperatorSpec::add_term(int j, int alpha, const SemiPeriodicCoefficient& c) {
  return add_term(TermKey{j, alpha, order_}, c);
}

OperatorSpec& OperatorSpec::add_term(TermKey key, const SemiPeriodicCoefficient& c) {
  if (key.j < 0 || key.alpha < 0) fail(ErrorKind::InvalidArgument, "derivative orders must be nonnegative");
  if (base_ == BaseManifold::Point && key.alpha != 0)
    fail(ErrorKind::InvalidArgument, "point base admits no x-derivatives (alpha must be 0)");
  if (key.j + key.alpha > key.lambda) fail(ErrorKind::InvalidArgument, "term order j + alpha exceeds its lambda power");
  if (key.lambda > order_) fail(ErrorKind::InvalidArgument, "term lambda power exceeds the spec order N");
  check_coefficient(c.plus, base_, k_);
  check_coefficient(c.minus, base_, k_);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second.plus += c.plus;
    it->second.minus += c.minus;
  }
  return *this;
}

bool OperatorSpec::has_top_order_term() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.top_order(); });
}

OperatorSpec OperatorSpec::swapped_sides() const {
  OperatorSpec out(base_, k_, order_);
  for (const auto& [key, c] : terms_) out.add_term(key, {c.minus, c.plus});
  return out;
}

OperatorSpec OperatorSpec::adjoint_family() const {
  OperatorSpec out(base_, k_, order_);
  for (const auto& [key, c] : terms_) out.add_term(key, {c.plus.adjoint(), c.minus.adjoint()});
  return out;
}

OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b) {
  if (a.base_ != b.base_ || a.k_ != b.k_) fail(ErrorKind::MatrixSizeMismatch, "adding incompatible specs");
  OperatorSpec out(a.base_, a.k_, std::max(a.order_, b.order_));
  for (const auto& [key, c] : a.terms_) out.add_term(key, c);
  for (const auto& [key, c] : b.terms_) out.add_term(key, c);
  return out;
}

OperatorSpec compose(const OperatorSpec& a, const OperatorSpec& b) {
  if (a.base() != b.base() || a.k() != b.k()) fail(ErrorKind::MatrixSizeMismatch, "composing incompatible specs");
  OperatorSpec out(a.base(), a.k(), a.order() + b.order());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out.add_term(TermKey{ka.j + kb.j, ka.alpha + kb.alpha, ka.lambda + kb.lambda},
                   {ca.plus * cb.plus, ca.minus * cb.minus});
  return out;
}

// ---------------------------------------------------------------------------
// Symbols

void validate(const CospherePoint& pt, BaseManifold base) {
  if (base == BaseManifold::Point) {
    if (pt.xi != 0.0 || std::abs(std::abs(pt.tau) - 1.0) > 1e-12)
      fail(ErrorKind::InvalidArgument, "point-base cosphere points have tau = ±1 and xi = 0");
  } else if (std::abs(pt.tau * pt.tau + pt.xi * pt.xi - 1.0) > 1e-12) {
    fail(ErrorKind::InvalidArgument, "cosphere point violates tau² + xi² = 1");
  }
}

BoundarySymbol::BoundarySymbol(Side side, BaseManifold base, int k, std::vector<Term> terms)
    : side_(side), base_(base), k_(k), terms_(std::move(terms)) {}

Matrix BoundarySymbol::operator()(const CospherePoint& pt) const {
  validate(pt, base_);
  const double xi = base_ == BaseManifold::Point ? 0.0 : pt.xi;
  const double x = base_ == BaseManifold::Point ? 0.0 : pt.x;
  Matrix out = Matrix::Zero(k_, k_);
  for (const auto& t : terms_) out += t.coeff(pt.theta, x) * (ipow(pt.tau, t.j) * ipow(xi, t.alpha));
  return out;
}

FourierSymbol BoundarySymbol::to_fourier() const {
  FourierSymbol out(base_, k_);
  for (const auto& t : terms_) {
    const auto fiber = fiber_monomial(t.j, t.alpha);
    for (const auto& [pq, c] : t.coeff.coeffs())
      for (const auto& [r, w] : fiber)
        if (w != Scalar(0.0)) out.add(pq.first, pq.second, r, c * w);
  }
  return out;
}

BoundarySymbol boundary_symbol(const OperatorSpec& spec, Side side) {
  std::vector<BoundarySymbol::Term> terms;
  for (const auto& [key, c] : spec.terms())
    if (key.top_order()) terms.push_back({key.j, key.alpha, c.on(side)});
  return BoundarySymbol(side, spec.base(), spec.k(), std::move(terms));
}

Matrix evaluate_principal_symbol(const OperatorSpec& spec, Side side, const CospherePoint& pt) {
  return boundary_symbol(spec, side)(pt);
}

double symbol_margin(const BoundarySymbol& symbol, const EllipticityGrid& grid) {
  const bool point = symbol.base() == BaseManifold::Point;
  if (grid.n_theta < 8 || (!point && (grid.n_x < 8 || grid.n_fiber < 16)))
    fail(ErrorKind::InvalidArgument, "ellipticity grid needs >= 8 points per periodic variable and >= 16 on the fiber");
  if (symbol.terms().empty()) return 0.0;

  const int nx = point ? 1 : grid.n_x;
  std::vector<std::pair<double, double>> fiber;
  if (point) {
    fiber = {{-1.0, 0.0}, {1.0, 0.0}};
  } else {
    for (int l = 0; l < grid.n_fiber; ++l) {
      const double psi = grid_angle(l, grid.n_fiber);
      fiber.emplace_back(std::cos(psi), std::sin(psi));
    }
  }
  const int k = symbol.k();
  std::vector<Matrix> coeff(symbol.terms().size());
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < nx; ++j) {
      const double theta = grid_angle(i, grid.n_theta);
      const double x = point ? 0.0 : grid_angle(j, nx);
      for (std::size_t t = 0; t < coeff.size(); ++t) coeff[t] = symbol.terms()[t].coeff(theta, x);
      for (const auto& [tau, xi] : fiber) {
        Matrix value = Matrix::Zero(k, k);
        for (std::size_t t = 0; t < coeff.size(); ++t)
          value += coeff[t] * (ipow(tau, symbol.terms()[t].j) * ipow(xi, symbol.terms()[t].alpha));
        margin = std::min(margin, k == 1 ? std::abs(value(0, 0)) : smallest_singular_value(value));
      }
    }
  return margin;
}

EllipticityResult check_uniform_ellipticity(const OperatorSpec& spec, const EllipticityGrid& grid) {
  const double margin = std::min(symbol_margin(boundary_symbol(spec, Side::Minus), grid),
                                 symbol_margin(boundary_symbol(spec, Side::Plus), grid));
  return {margin > grid.tol, margin};
}

// ---------------------------------------------------------------------------
// Boundary operators

int BoundaryOperatorSpec::bandwidth() const {
  int b = 0;
  for (const auto& t : terms) b = std::max(b, t.coeff.bandwidth());
  return b;
}

bool BoundaryOperatorSpec::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.coeff.is_zero(); });
}

BoundaryOperatorSpec boundary_operator(const OperatorSpec& spec, Side side, bool full_order) {
  BoundaryOperatorSpec op;
  op.side = side;
  op.base = spec.base();
  op.k = spec.k();
  op.full_order = full_order;
  for (const auto& [key, c] : spec.terms())
    if (full_order || key.top_order()) op.terms.push_back({key, c.on(side)});
  op.symbol_margin = symbol_margin(boundary_symbol(spec, side), EllipticityGrid{32, 32, 32, 1e-8});
  op.elliptic = op.symbol_margin > 1e-8;
  return op;
}

}  // namespace cylindex
