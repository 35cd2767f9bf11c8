#include "cylindex/models.hpp"

namespace cylindex::models {

namespace {

const Scalar kI(0.0, 1.0);

Matrix random_matrix(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) m(r, c) = Scalar(n(rng), n(rng));
  return m;
}

PeriodicFunction scalar_fn(BaseManifold base, int k, Scalar value) {
  return PeriodicFunction::constant(base, Matrix::Identity(k, k) * value);
}

}  // namespace

Matrix pauli(int i) {
  Matrix s = Matrix::Zero(2, 2);
  switch (i) {
    case 0: s = Matrix::Identity(2, 2); break;
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = -kI; s(1, 0) = kI; break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: fail(ErrorKind::InvalidArgument, "Pauli index must be 0..3");
  }
  return s;
}

OperatorSpec multiplier_spec(BaseManifold base, int p) {
  PeriodicFunction f(base, 1);
  f.add(p, 0, 1.0);
  return OperatorSpec(base, 1, 0).add_term(0, 0, SemiPeriodicCoefficient::same(f));
}

OperatorSpec bessel_spec(BaseManifold base) {
  return OperatorSpec(base, 1, 1).add_term(TermKey{0, 0, 1}, SemiPeriodicCoefficient::same(scalar_fn(base, 1, 1.0)));
}

OperatorSpec time_derivative_spec(BaseManifold base) {
  return OperatorSpec(base, 1, 1).add_term(1, 0, SemiPeriodicCoefficient::same(scalar_fn(base, 1, 1.0)));
}

OperatorSpec transversal_spec(const PeriodicFunction& c) {
  if (c.base() != BaseManifold::Circle || c.k() != 1)
    fail(ErrorKind::InvalidArgument, "transversal coefficient must be a scalar function on the circle base");
  return OperatorSpec(BaseManifold::Circle, 1, 1)
      .add_term(1, 0, SemiPeriodicCoefficient::same(scalar_fn(BaseManifold::Circle, 1, 1.0)))
      .add_term(0, 1, SemiPeriodicCoefficient::same(c));
}

OperatorSpec toeplitz_calibration_spec() {
  const auto base = BaseManifold::Point;
  // plus: (1 + z)/2 + τ(z − 1)/2, which is 1 at τ = −1 and z at τ = +1
  PeriodicFunction even(base, 1);
  even.add(0, 0, 0.5).add(1, 0, 0.5);
  PeriodicFunction odd(base, 1);
  odd.add(0, 0, -0.5).add(1, 0, 0.5);
  OperatorSpec spec(base, 1, 1);
  spec.add_term(TermKey{0, 0, 0}, {even, scalar_fn(base, 1, 1.0)});
  spec.add_term(TermKey{1, 0, 1}, {odd, PeriodicFunction::zero(base, 1)});
  return spec;
}

OperatorSpec shifted_dirac_spec(double shift) {
  const auto base = BaseManifold::Circle;
  return OperatorSpec(base, 1, 1)
      .add_term(1, 0, SemiPeriodicCoefficient::same(scalar_fn(base, 1, 1.0)))
      .add_term(0, 1, SemiPeriodicCoefficient::same(scalar_fn(base, 1, kI)))
      .add_term(0, 0, SemiPeriodicCoefficient::same(scalar_fn(base, 1, shift)));
}

FourierSymbol su2_symbol(double mass) {
  const auto base = BaseManifold::Circle;
  const Matrix one = pauli(0);
  FourierSymbol a = FourierSymbol::constant(base, mass * one);
  // cos u = (e^{iu} + e^{−iu})/2,  i·sin u·σ = (e^{iu} − e^{−iu})/2·σ
  a.add(1, 0, 0, 0.5 * one).add(-1, 0, 0, 0.5 * one);
  a.add(0, 1, 0, 0.5 * one).add(0, -1, 0, 0.5 * one);
  a.add(0, 0, 1, 0.5 * one).add(0, 0, -1, 0.5 * one);
  a.add(1, 0, 0, 0.5 * pauli(1)).add(-1, 0, 0, -0.5 * pauli(1));
  a.add(0, 1, 0, 0.5 * pauli(2)).add(0, -1, 0, -0.5 * pauli(2));
  a.add(0, 0, 1, 0.5 * pauli(3)).add(0, 0, -1, -0.5 * pauli(3));
  return a;
}

OperatorSpec su2_spec(double mass) {
  const auto base = BaseManifold::Circle;
  const Matrix one = pauli(0);
  PeriodicFunction zeroth = PeriodicFunction::constant(base, mass * one);
  zeroth.add(1, 0, Matrix(0.5 * one + 0.5 * pauli(1))).add(-1, 0, Matrix(0.5 * one - 0.5 * pauli(1)));
  zeroth.add(0, 1, Matrix(0.5 * one + 0.5 * pauli(2))).add(0, -1, Matrix(0.5 * one - 0.5 * pauli(2)));

  OperatorSpec spec(base, 2, 1);
  spec.add_term(TermKey{0, 0, 0}, {zeroth, PeriodicFunction::constant(base, one)});
  spec.add_term(TermKey{1, 0, 1}, {PeriodicFunction::constant(base, one), PeriodicFunction::zero(base, 2)});
  spec.add_term(TermKey{0, 1, 1},
                {PeriodicFunction::constant(base, Matrix(kI * pauli(3))), PeriodicFunction::zero(base, 2)});
  return spec;
}

PeriodicFunction random_periodic(BaseManifold base, int k, int bandwidth, double scale, std::mt19937_64& rng) {
  const int qmax = base == BaseManifold::Point ? 0 : bandwidth;
  std::vector<std::pair<std::pair<int, int>, Matrix>> raw;
  double total = 0.0;
  for (int p = -bandwidth; p <= bandwidth; ++p)
    for (int q = -qmax; q <= qmax; ++q) {
      Matrix c = random_matrix(k, rng);
      total += c.norm();
      raw.push_back({{p, q}, std::move(c)});
    }
  PeriodicFunction f(base, k);
  for (auto& [pq, c] : raw) f.add(pq.first, pq.second, Matrix(c * (scale / total)));
  return f;
}

FourierSymbol random_near_identity(int k, int base_bandwidth, int fiber_bandwidth, double scale,
                                   std::mt19937_64& rng) {
  std::vector<std::pair<FourierSymbol::Key, Matrix>> raw;
  double total = 0.0;
  for (int p = -base_bandwidth; p <= base_bandwidth; ++p)
    for (int q = -base_bandwidth; q <= base_bandwidth; ++q)
      for (int r = -fiber_bandwidth; r <= fiber_bandwidth; ++r) {
        Matrix c = random_matrix(k, rng);
        total += c.norm();
        raw.push_back({{p, q, r}, std::move(c)});
      }
  FourierSymbol a = FourierSymbol::constant(BaseManifold::Circle, Matrix::Identity(k, k));
  for (auto& [key, c] : raw) a.add(key[0], key[1], key[2], Matrix(c * (scale / total)));
  return a;
}

FourierSymbol random_degree_symbol(int e, std::mt19937_64& rng, int base_bandwidth, int fiber_bandwidth, double scale) {
  const FourierSymbol u = su2_symbol();
  const FourierSymbol step = e >= 0 ? u : u.adjoint();
  FourierSymbol core = FourierSymbol::constant(BaseManifold::Circle, pauli(0));
  for (int i = 0; i < std::abs(e); ++i) core = core * step;
  const FourierSymbol h = random_near_identity(2, base_bandwidth, fiber_bandwidth, scale, rng);
  const FourierSymbol h2 = random_near_identity(2, base_bandwidth, fiber_bandwidth, scale, rng);
  return h * core * h2;
}

FourierSymbol random_scalar_symbol(std::mt19937_64& rng, int bandwidth, double scale) {
  std::uniform_int_distribution<int> winding(-1, 1);
  FourierSymbol phase(BaseManifold::Circle, 1);
  phase.add(winding(rng), winding(rng), 0, Matrix::Identity(1, 1));
  return phase * random_near_identity(1, bandwidth, bandwidth, scale, rng);
}

}  // namespace cylindex::models
