#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylindex/models.hpp"
#include "cylindex/pipeline.hpp"
#include "support.hpp"

using namespace cylindex;

namespace {

constexpr auto Point = BaseManifold::Point;
constexpr auto Circle = BaseManifold::Circle;

// Laurent polynomial z^d(1 + small) as Fourier coefficients in θ.
PeriodicFunction random_loop(int d, std::mt19937_64& rng, double scale = 0.3) {
  PeriodicFunction f(Point, 1);
  f.add(d, 0, 1.0);
  f += models::random_periodic(Point, 1, 2, scale, rng) * PeriodicFunction(Point, 1).add(d, 0, 1.0);
  return f;
}

// Order-one spec on the point base whose boundary symbol restricts to the
// given loops on τ = ∓1, per side: a + τ b with a = (f₊ + f₋)/2, b = (f₊ − f₋)/2.
OperatorSpec toeplitz_type(const std::array<PeriodicFunction, 2>& minus, const std::array<PeriodicFunction, 2>& plus) {
  auto even = [](const std::array<PeriodicFunction, 2>& f) { return 0.5 * (f[1] + f[0]); };
  auto odd = [](const std::array<PeriodicFunction, 2>& f) { return 0.5 * (f[1] + (-1.0) * f[0]); };
  OperatorSpec s(Point, 1, 1);
  s.add_term(TermKey{0, 0, 0}, {even(plus), even(minus)});
  s.add_term(TermKey{1, 0, 1}, {odd(plus), odd(minus)});
  return s;
}

struct Degrees {
  int minus_lo, minus_hi, plus_lo, plus_hi;
  // reference: w(f at τ = −1) − w(f at τ = +1)
  IndexPair expected() const { return {minus_lo - minus_hi, plus_lo - plus_hi}; }
};

OperatorSpec random_toeplitz_type(const Degrees& d, std::mt19937_64& rng) {
  return toeplitz_type({random_loop(d.minus_lo, rng), random_loop(d.minus_hi, rng)},
                       {random_loop(d.plus_lo, rng), random_loop(d.plus_hi, rng)});
}

// Finite-section reference for one side of a point-base spec.
int reference_side(const OperatorSpec& spec, Side side) {
  const BoundarySymbol f = boundary_symbol(spec, side);
  const ref::SymbolFn g = [&](double th, double, double tau, double) {
    return Matrix(f(CospherePoint{th, 0.0, tau < 0 ? -1.0 : 1.0, 0.0}));
  };
  return ref::index(ref::quantize(g, 1, spec.k(), 40, 4, 32), 1e-6);
}

PipelineConfig small_radii(std::vector<int> radii) {
  PipelineConfig c;
  c.radii = std::move(radii);
  return c;
}

}  // namespace

TEST_CASE("listed index pairs") {
  SUBCASE("constant invertible coefficients give (0, 0)") {
    const Matrix c = Matrix::Identity(2, 2) * Scalar(1.5, -0.5);
    for (BaseManifold base : {Point, Circle}) {
      const OperatorSpec s =
          OperatorSpec(base, 2, 0).add_term(0, 0, SemiPeriodicCoefficient::same(PeriodicFunction::constant(base, c)));
      CHECK(delta1_topological(s) == IndexPair{0, 0});
      CHECK(delta1_analytic(s, small_radii({4, 6})) == IndexPair{0, 0});
    }
  }
  SUBCASE("Toeplitz calibration spec gives (0, −1)") {
    const OperatorSpec s = models::toeplitz_calibration_spec();
    const IndexPair expected{reference_side(s, Side::Minus), reference_side(s, Side::Plus)};
    CHECK(expected == IndexPair{0, -1});
    CHECK(delta1_topological(s) == expected);
    CHECK(delta1_analytic(s) == expected);
  }
  SUBCASE("degree-one SU(2) spec gives (0, −1) and its swap (−1, 0)") {
    const OperatorSpec s = models::su2_spec();
    CHECK(delta1_topological(s) == IndexPair{0, -1});
    CHECK(delta1_topological(s.swapped_sides()) == IndexPair{-1, 0});
  }
  SUBCASE("time derivative on a point base gives (0, 0) on both routes") {
    const OperatorSpec s = models::time_derivative_spec(Point);
    CHECK(delta1_topological(s) == IndexPair{0, 0});
    CHECK(delta1_analytic(s) == IndexPair{0, 0});
    const IndexResult r = analytic_index(s, Side::Plus);
    CHECK(r.ker == 1);
    CHECK(r.coker == 1);
  }
}

TEST_CASE("degree-one SU(2) spec on the analytic route") {
  const PipelineConfig c = small_radii({12, 14});
  const IndexResult plus = analytic_index(models::su2_spec(), Side::Plus, c);
  CHECK(plus.index == -1);
  CHECK(plus.ker == 0);
  CHECK(plus.coker == 1);
  CHECK(analytic_index(models::su2_spec(), Side::Minus, c).index == 0);
}

TEST_CASE("pipeline failure modes") {
  SUBCASE("non-elliptic specs are refused") {
    const OperatorSpec s = models::time_derivative_spec(Circle);
    for (auto route : {delta1_topological, delta1_analytic}) {
      try {
        route(s, {});
        FAIL("expected NotElliptic");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotElliptic);
      }
    }
  }
  SUBCASE("route errors name the side") {
    PeriodicFunction fast(Point, 1);
    fast.add(10, 0, 1.0);
    const OperatorSpec s = toeplitz_type({PeriodicFunction::constant(Point, Matrix::Identity(1, 1)), fast},
                                         {fast, PeriodicFunction::constant(Point, Matrix::Identity(1, 1))});
    PipelineConfig c;
    c.loop_samples = 16;
    try {
      delta1_topological(s, c);
      FAIL("expected PhaseJump");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PhaseJump);
      CHECK(std::string(e.what()).find("minus side:") != std::string::npos);
    }
  }
}

TEST_CASE("verification reports") {
  SUBCASE("agreement on the calibration spec") {
    const AgreementReport r = verify_agreement(models::toeplitz_calibration_spec());
    CHECK(r.elliptic);
    CHECK(r.agree);
    REQUIRE(r.topological);
    REQUIRE(r.analytic);
    CHECK(*r.topological == IndexPair{0, -1});
    CHECK(*r.analytic == IndexPair{0, -1});
  }
  SUBCASE("non-elliptic input is reported, not thrown") {
    const AgreementReport r = verify_agreement(models::time_derivative_spec(Circle));
    CHECK_FALSE(r.elliptic);
    CHECK_FALSE(r.agree);
    CHECK_FALSE(r.topological);
    CHECK_FALSE(r.diagnostics.empty());
  }
  SUBCASE("reports are reproducible byte for byte") {
    const OperatorSpec s = models::toeplitz_calibration_spec();
    const std::string a = to_json(verify_agreement(s)).dump();
    const std::string b = to_json(verify_agreement(s)).dump();
    CHECK(a == b);
    CHECK(a.find("runtimes") == std::string::npos);
    CHECK(to_json(verify_agreement(s), true).dump().find("runtimes") != std::string::npos);
  }
}

TEST_CASE("property: random Toeplitz-type specs agree on both routes and with the reference") {
  std::mt19937_64 rng(1);
  const std::vector<Degrees> cases{{0, 1, 1, 0}, {2, -1, 0, 0}, {-1, 1, 1, 1}, {1, 0, -2, 1}, {0, 0, 3, 1}};
  for (const Degrees& d : cases) {
    const OperatorSpec s = random_toeplitz_type(d, rng);
    const IndexPair reference{reference_side(s, Side::Minus), reference_side(s, Side::Plus)};
    CHECK(reference == d.expected());
    CHECK(delta1_topological(s) == reference);
    CHECK(delta1_analytic(s) == reference);
    CHECK(verify_agreement(s).agree);
  }
}

TEST_CASE("property: the adjoint family negates the pair") {
  std::mt19937_64 rng(2);
  for (const Degrees& d : std::vector<Degrees>{{0, 1, 1, 0}, {2, 0, -1, 1}}) {
    const OperatorSpec s = random_toeplitz_type(d, rng);
    const OperatorSpec a = s.adjoint_family();
    CHECK(delta1_topological(a) == -delta1_topological(s));
    CHECK(delta1_analytic(a) == -delta1_analytic(s));
  }
  CHECK(delta1_topological(models::su2_spec().adjoint_family()) == IndexPair{0, 1});
}

TEST_CASE("property: swapping the ends swaps the pair") {
  std::mt19937_64 rng(3);
  const OperatorSpec s = random_toeplitz_type({1, 0, 0, 2}, rng);
  CHECK(delta1_topological(s.swapped_sides()) == delta1_topological(s).swapped());
  CHECK(delta1_analytic(s.swapped_sides()) == delta1_analytic(s).swapped());
}

TEST_CASE("property: composition adds the pairs") {
  std::mt19937_64 rng(4);
  const OperatorSpec a = random_toeplitz_type({1, 0, 0, 1}, rng);
  const OperatorSpec b = random_toeplitz_type({0, -1, 2, 0}, rng);
  const OperatorSpec ab = compose(a, b);
  CHECK(delta1_topological(ab) == delta1_topological(a) + delta1_topological(b));
  CHECK(delta1_analytic(ab) == delta1_analytic(a) + delta1_analytic(b));
  const OperatorSpec uu = compose(models::su2_spec(), models::su2_spec().swapped_sides());
  CHECK(delta1_topological(uu) == IndexPair{-1, -1});
}

TEST_CASE("property: the pair is constant along an invertible homotopy") {
  std::mt19937_64 rng(5);
  const auto m0 = random_loop(1, rng), m1 = random_loop(0, rng);
  const auto p0 = random_loop(0, rng), p1 = random_loop(-1, rng);
  const auto bump = models::random_periodic(Point, 1, 2, 0.4, rng);
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    // z^d(1 + h) + t·z^d·bump keeps |1 + h + t·bump| ≥ 1 − 0.3 − 0.4 > 0
    auto deform = [&](const PeriodicFunction& f) { return f + (t * f) * bump; };
    const OperatorSpec s = toeplitz_type({deform(m0), deform(m1)}, {deform(p0), deform(p1)});
    CHECK(delta1_topological(s) == IndexPair{1, 1});
    CHECK(delta1_analytic(s) == IndexPair{1, 1});
  }
  for (double mass : {1.5, 2.0, 2.5}) CHECK(delta1_topological(models::su2_spec(mass)) == IndexPair{0, -1});
}
