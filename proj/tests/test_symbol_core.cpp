#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylindex/models.hpp"
#include "cylindex/oracle.hpp"
#include "cylindex/symbol_core.hpp"
#include "support.hpp"

using namespace cylindex;

namespace {

const Scalar I(0.0, 1.0);

PeriodicFunction constant(BaseManifold b, Scalar c, int k = 1) {
  return PeriodicFunction::constant(b, Matrix::Identity(k, k) * c);
}

std::vector<CospherePoint> random_points(BaseManifold base, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<CospherePoint> pts;
  for (int i = 0; i < count; ++i) {
    if (base == BaseManifold::Point) {
      pts.push_back({angle(rng), 0.0, i % 2 ? 1.0 : -1.0, 0.0});
    } else {
      pts.push_back(CospherePoint::on_fiber(angle(rng), angle(rng), angle(rng)));
    }
  }
  return pts;
}

// Random spec of order n: every (j, α) with j + α ≤ n, λ = n.
OperatorSpec random_spec(BaseManifold base, int k, int n, std::mt19937_64& rng) {
  OperatorSpec s(base, k, n);
  for (int j = 0; j <= n; ++j)
    for (int a = 0; a + j <= n; ++a) {
      if (base == BaseManifold::Point && a > 0) continue;
      s.add_term(j, a, {models::random_periodic(base, k, 2, 1.0, rng), models::random_periodic(base, k, 2, 1.0, rng)});
    }
  return s;
}

}  // namespace

TEST_CASE("periodic functions are 2π-periodic on a sample grid") {
  std::mt19937_64 rng(1);
  const auto f = models::random_periodic(BaseManifold::Circle, 2, 3, 1.0, rng);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double th = grid_angle(i, 8), x = grid_angle(j, 8);
      CHECK((f(th + kTwoPi, x) - f(th, x)).norm() < 1e-12);
      CHECK((f(th, x + kTwoPi) - f(th, x)).norm() < 1e-12);
    }
}

TEST_CASE("point-base coefficients reject x frequencies") {
  PeriodicFunction f(BaseManifold::Point, 1);
  CHECK_THROWS_AS(f.add(0, 1, 1.0), Error);
}

TEST_CASE("time derivative generator has symbol tau") {
  // listed symbol of the time-derivative generator: τ
  std::mt19937_64 rng(2);
  for (BaseManifold base : {BaseManifold::Point, BaseManifold::Circle}) {
    const OperatorSpec a5 = models::time_derivative_spec(base);
    for (const auto& pt : random_points(base, 20, rng))
      for (Side s : {Side::Minus, Side::Plus}) CHECK(std::abs(evaluate_principal_symbol(a5, s, pt)(0, 0) - pt.tau) < 1e-15);
  }
}

TEST_CASE("order-zero constant spec evaluates to c·I") {
  const Scalar c(0.3, -1.7);
  const OperatorSpec s =
      OperatorSpec(BaseManifold::Circle, 3, 0).add_term(0, 0, SemiPeriodicCoefficient::same(constant(BaseManifold::Circle, c, 3)));
  std::mt19937_64 rng(3);
  for (const auto& pt : random_points(BaseManifold::Circle, 10, rng))
    CHECK((evaluate_principal_symbol(s, Side::Plus, pt) - c * Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("transversal generator has symbol tau + c(x) xi") {
  PeriodicFunction c(BaseManifold::Circle, 1);
  c.add(0, 1, Scalar(0.5, 0.25)).add(0, -1, Scalar(-0.1, 0.0)).add(0, 0, 2.0);
  const OperatorSpec s = models::transversal_spec(c);
  std::mt19937_64 rng(4);
  for (const auto& pt : random_points(BaseManifold::Circle, 20, rng)) {
    const Scalar cx = 2.0 + Scalar(0.5, 0.25) * std::polar(1.0, pt.x) - 0.1 * std::polar(1.0, -pt.x);
    CHECK(std::abs(evaluate_principal_symbol(s, Side::Minus, pt)(0, 0) - (pt.tau + cx * pt.xi)) < 1e-14);
  }
}

TEST_CASE("ellipticity of the generator examples") {
  SUBCASE("tau on a point base is elliptic") {
    const auto r = check_uniform_ellipticity(models::time_derivative_spec(BaseManifold::Point));
    CHECK(r.elliptic);
    CHECK(r.margin == doctest::Approx(1.0));
  }
  SUBCASE("tau on a circle base vanishes at xi = ±1") {
    const auto r = check_uniform_ellipticity(models::time_derivative_spec(BaseManifold::Circle));
    CHECK_FALSE(r.elliptic);
    CHECK(r.margin < 1e-15);
  }
  SUBCASE("tau + i xi has margin 1") {
    const OperatorSpec s = models::transversal_spec(constant(BaseManifold::Circle, I));
    const auto r = check_uniform_ellipticity(s);
    // reference: |τ + iξ| over many random cosphere points
    std::mt19937_64 rng(5);
    double ref_min = 1e300;
    for (const auto& pt : random_points(BaseManifold::Circle, 2000, rng))
      ref_min = std::min(ref_min, std::abs(Scalar(pt.tau, 0) + I * pt.xi));
    CHECK(r.elliptic);
    CHECK(r.margin == doctest::Approx(ref_min).epsilon(1e-12));
    CHECK(r.margin == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("grids below the minimum resolution are rejected") {
    CHECK_THROWS_AS(check_uniform_ellipticity(models::su2_spec(), EllipticityGrid{4, 64, 64, 1e-8}), Error);
    CHECK_THROWS_AS(check_uniform_ellipticity(models::su2_spec(), EllipticityGrid{64, 64, 8, 1e-8}), Error);
  }
  SUBCASE("spec without a top-order term is non-elliptic with margin 0") {
    const auto r = check_uniform_ellipticity(models::bessel_spec(BaseManifold::Point));
    CHECK_FALSE(r.elliptic);
    CHECK(r.margin == 0.0);
  }
}

TEST_CASE("boundary symbols of the generators") {
  std::mt19937_64 rng(6);
  SUBCASE("multiplier generator gives e^{iθ} on both sides") {
    const OperatorSpec a3 = models::multiplier_spec(BaseManifold::Circle, 1);
    for (Side s : {Side::Minus, Side::Plus}) {
      const BoundarySymbol f = boundary_symbol(a3, s);
      for (const auto& pt : random_points(BaseManifold::Circle, 10, rng))
        CHECK(std::abs(f(pt)(0, 0) - std::polar(1.0, pt.theta)) < 1e-15);
    }
  }
  SUBCASE("time derivative gives tau on either side") {
    const BoundarySymbol f = boundary_symbol(models::time_derivative_spec(BaseManifold::Point), Side::Minus);
    CHECK(f(CospherePoint{1.0, 0.0, -1.0, 0.0})(0, 0) == Scalar(-1.0));
  }
  SUBCASE("differing limits give differing boundary symbols") {
    const OperatorSpec s = models::toeplitz_calibration_spec();
    const CospherePoint pt{1.0, 0.0, 1.0, 0.0};
    CHECK(std::abs(boundary_symbol(s, Side::Plus)(pt)(0, 0) - std::polar(1.0, 1.0)) < 1e-15);
    CHECK(boundary_symbol(s, Side::Minus)(pt)(0, 0) == Scalar(1.0));
  }
  SUBCASE("invalid cosphere points are rejected") {
    const BoundarySymbol f = boundary_symbol(models::su2_spec(), Side::Plus);
    CHECK_THROWS_AS(f(CospherePoint{0.0, 0.0, 0.5, 0.5}), Error);
    const BoundarySymbol g = boundary_symbol(models::toeplitz_calibration_spec(), Side::Plus);
    CHECK_THROWS_AS(g(CospherePoint{0.0, 0.0, 0.0, 1.0}), Error);
  }
  SUBCASE("Fourier expansion matches pointwise evaluation") {
    for (const OperatorSpec& spec : {models::su2_spec(), random_spec(BaseManifold::Circle, 2, 3, rng)}) {
      const BoundarySymbol f = boundary_symbol(spec, Side::Plus);
      const FourierSymbol g = f.to_fourier();
      for (const auto& pt : random_points(BaseManifold::Circle, 20, rng)) {
        const double psi = std::atan2(pt.xi, pt.tau);
        CHECK((g(pt.theta, pt.x, psi) - f(pt)).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("boundary operator specs") {
  SUBCASE("time derivative gives D_θ Λ⁻¹") {
    const auto op = boundary_operator(models::time_derivative_spec(BaseManifold::Point), Side::Plus, true);
    REQUIRE(op.terms.size() == 1);
    CHECK(op.terms[0].key == TermKey{1, 0, 1});
    CHECK(op.terms[0].coeff.coefficient(0, 0)(0, 0) == Scalar(1.0));
    CHECK(op.elliptic);
  }
  SUBCASE("the Λ generator keeps no top-order term") {
    const auto top = boundary_operator(models::bessel_spec(BaseManifold::Point), Side::Plus, false);
    CHECK(top.terms.empty());
    CHECK(top.is_zero());
    CHECK_FALSE(top.elliptic);
    const auto full = boundary_operator(models::bessel_spec(BaseManifold::Point), Side::Plus, true);
    CHECK(full.terms.size() == 1);
  }
  SUBCASE("order-zero spec gives a multiplication operator") {
    PeriodicFunction a(BaseManifold::Point, 1);
    a.add(2, 0, 0.5).add(-1, 0, Scalar(0.0, 0.3));
    const OperatorSpec s = OperatorSpec(BaseManifold::Point, 1, 0).add_term(0, 0, SemiPeriodicCoefficient::same(a));
    const auto op = boundary_operator(s, Side::Minus, false);
    REQUIRE(op.terms.size() == 1);
    CHECK(op.terms[0].key == TermKey{0, 0, 0});
    CHECK(op.bandwidth() == 2);
  }
}

TEST_CASE("spec construction validates its terms") {
  OperatorSpec s(BaseManifold::Point, 1, 1);
  const auto one = SemiPeriodicCoefficient::same(constant(BaseManifold::Point, 1.0));
  CHECK_THROWS_AS(s.add_term(0, 1, one), Error);
  CHECK_THROWS_AS(s.add_term(2, 0, one), Error);
  CHECK_THROWS_AS(s.add_term(TermKey{0, 0, 2}, one), Error);
  CHECK_THROWS_AS(s.add_term(-1, 0, one), Error);
  CHECK_THROWS_AS(s.add_term(0, 0, SemiPeriodicCoefficient::same(constant(BaseManifold::Point, 1.0, 2))), Error);
  CHECK_THROWS_AS(s.add_term(0, 0, SemiPeriodicCoefficient::same(constant(BaseManifold::Circle, 1.0))), Error);
  CHECK_THROWS_AS(OperatorSpec(BaseManifold::Point, 0, 1), Error);
  CHECK_THROWS_AS(OperatorSpec(BaseManifold::Point, 1, -1), Error);
}

TEST_CASE("total Fredholm criterion") {
  SUBCASE("time derivative on a point base is elliptic but not Fredholm") {
    // reference: D_θ(1 + D_θ²)^{-1/2} has eigenvalue m/√(1+m²) = 0 at m = 0
    CHECK(0.0 / std::sqrt(1.0 + 0.0) == 0.0);
    const FredholmCheck c = check_total_fredholm(models::time_derivative_spec(BaseManifold::Point));
    CHECK(c.elliptic);
    CHECK_FALSE(c.fredholm);
    CHECK(c.boundary_diagnostics[0].find("not invertible") != std::string::npos);
  }
  SUBCASE("shifted tau + i xi is Fredholm") {
    const std::vector<int> radii{8, 10};
    const FredholmCheck c = check_total_fredholm(models::shifted_dirac_spec(), {}, radii);
    CHECK(c.elliptic);
    CHECK(c.fredholm);
    // reference: eigenvalues (m + 0.5 + i n)/√(1+m²+n²) are bounded away from 0
    double smallest = 1e300;
    for (int m = -40; m <= 40; ++m)
      for (int n = -40; n <= 40; ++n) smallest = std::min(smallest, std::abs(Scalar(m + 0.5, n)) / std::sqrt(1.0 + m * m + n * n));
    CHECK(smallest > 0.3);
  }
  SUBCASE("non-elliptic spec short-circuits before the oracle") {
    // these radii would exceed the dense cap if the oracle ran
    const std::vector<int> radii{500, 1000};
    const FredholmCheck c = check_total_fredholm(models::time_derivative_spec(BaseManifold::Circle), {}, radii);
    CHECK_FALSE(c.elliptic);
    CHECK_FALSE(c.fredholm);
  }
}

TEST_CASE("property: principal symbol is linear in the spec") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const BaseManifold base = trial % 2 ? BaseManifold::Circle : BaseManifold::Point;
    const OperatorSpec a = random_spec(base, 2, 2, rng);
    const OperatorSpec b = random_spec(base, 2, 2, rng);
    const OperatorSpec sum = a + b;
    for (const auto& pt : random_points(base, 10, rng))
      for (Side s : {Side::Minus, Side::Plus}) {
        const Matrix lhs = evaluate_principal_symbol(sum, s, pt);
        const Matrix rhs = evaluate_principal_symbol(a, s, pt) + evaluate_principal_symbol(b, s, pt);
        CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
      }
  }
}

TEST_CASE("property: lower-order terms do not change the principal symbol") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const BaseManifold base = trial % 2 ? BaseManifold::Circle : BaseManifold::Point;
    const OperatorSpec a = random_spec(base, 2, 2, rng);
    OperatorSpec b = a;
    b.add_term(1, 0, {models::random_periodic(base, 2, 1, 3.0, rng), models::random_periodic(base, 2, 1, 3.0, rng)});
    b.add_term(0, 0, {models::random_periodic(base, 2, 1, 3.0, rng), models::random_periodic(base, 2, 1, 3.0, rng)});
    for (const auto& pt : random_points(base, 10, rng))
      for (Side s : {Side::Minus, Side::Plus}) CHECK(evaluate_principal_symbol(a, s, pt) == evaluate_principal_symbol(b, s, pt));
  }
}

TEST_CASE("property: boundary_symbol agrees exactly with evaluate_principal_symbol") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 6; ++trial) {
    const BaseManifold base = trial % 2 ? BaseManifold::Circle : BaseManifold::Point;
    const OperatorSpec a = random_spec(base, 3, 2, rng);
    for (Side s : {Side::Minus, Side::Plus}) {
      const BoundarySymbol f = boundary_symbol(a, s);
      for (const auto& pt : random_points(base, 10, rng)) CHECK(f(pt) == evaluate_principal_symbol(a, s, pt));
    }
  }
}

TEST_CASE("property: conjugated coefficient family has the adjoint symbol") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 6; ++trial) {
    const BaseManifold base = trial % 2 ? BaseManifold::Circle : BaseManifold::Point;
    const OperatorSpec a = random_spec(base, 2, 2, rng);
    const OperatorSpec adj = a.adjoint_family();
    for (const auto& pt : random_points(base, 10, rng))
      for (Side s : {Side::Minus, Side::Plus}) {
        const Matrix lhs = evaluate_principal_symbol(adj, s, pt);
        const Matrix rhs = evaluate_principal_symbol(a, s, pt).adjoint();
        CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
      }
  }
}

TEST_CASE("swapping sides exchanges the boundary symbols") {
  const OperatorSpec s = models::su2_spec();
  const OperatorSpec w = s.swapped_sides();
  const CospherePoint pt = CospherePoint::on_fiber(0.3, 1.1, 2.0);
  CHECK(evaluate_principal_symbol(w, Side::Plus, pt) == evaluate_principal_symbol(s, Side::Minus, pt));
  CHECK(evaluate_principal_symbol(w, Side::Minus, pt) == evaluate_principal_symbol(s, Side::Plus, pt));
}

TEST_CASE("composition multiplies principal symbols") {
  std::mt19937_64 rng(11);
  const OperatorSpec a = random_spec(BaseManifold::Circle, 2, 1, rng);
  const OperatorSpec b = random_spec(BaseManifold::Circle, 2, 1, rng);
  const OperatorSpec ab = compose(a, b);
  CHECK(ab.order() == 2);
  for (const auto& pt : random_points(BaseManifold::Circle, 10, rng)) {
    const Matrix rhs = evaluate_principal_symbol(a, Side::Plus, pt) * evaluate_principal_symbol(b, Side::Plus, pt);
    CHECK((evaluate_principal_symbol(ab, Side::Plus, pt) - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("degree-one spec carries the SU(2) symbol on the plus side") {
  std::mt19937_64 rng(12);
  const OperatorSpec s = models::su2_spec();
  for (const auto& pt : random_points(BaseManifold::Circle, 20, rng)) {
    CHECK((evaluate_principal_symbol(s, Side::Plus, pt) - ref::su2(pt.theta, pt.x, pt.tau, pt.xi)).norm() < 1e-13);
    CHECK((evaluate_principal_symbol(s, Side::Minus, pt) - Matrix::Identity(2, 2)).norm() == 0.0);
  }
  CHECK(check_uniform_ellipticity(s).elliptic);
}
