#include "doctest.h"

#include <cmath>

#include "hypercalc/integral.hpp"
#include "hypercalc/parser.hpp"
#include "builders.hpp"

using namespace hypercalc;

namespace {
FuncExpr F(const char* s) { return parse_function(s); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::usage;
}
}  // namespace

TEST_CASE("partitions") {
  const auto p = build_partition(Rational(0), Rational(1), Rational(2, 7));
  CHECK(p.n == 3);
  CHECK(p.cells() == 4);
  CHECK(p.width(0) == Rational(2, 7));
  CHECK(p.width(3) == Rational(1, 7));
  CHECK(p.point(4) == Rational(1));
  const auto even = build_partition(Rational(0), Rational(1), Rational(1, 4));
  CHECK(even.cells() == 5);
  CHECK(even.width(4) == Rational(0));
  CHECK(code_of([] { build_partition(Rational(1), Rational(1), Rational(1)); }) == ErrorCode::bad_interval);
  CHECK(code_of([] { build_partition(Rational(0), Rational(1), Rational(0)); }) == ErrorCode::bad_interval);
}

TEST_CASE("exact lower and upper sums of a polynomial with an interior extremum") {
  const Integrand f = Integrand::from_expr(F("x^2"));
  const auto s = lower_upper_sums(f, build_partition(Rational(-1), Rational(1), Rational(1, 2)),
                                  Execution::serial, ExactPolicy::require);
  REQUIRE(s.exact);
  // cells [-1,-1/2], [-1/2,0], [0,1/2], [1/2,1]
  CHECK(s.exact->lower == Rational(1, 2) * (Rational(1, 4) + 0 + 0 + Rational(1, 4)));
  CHECK(s.exact->upper == Rational(1, 2) * (Rational(1) + Rational(1, 4) + Rational(1, 4) + Rational(1)));
  CHECK_FALSE(s.sampled);
  CHECK(std::fabs(s.approx.lower - 0.25) < 1e-12);
}

TEST_CASE("integration modes and tags") {
  auto r = integrate(Integrand::from_expr(F("3*x^2+1")), Rational(0), Rational(2));
  CHECK(r.tag == IntegralTag::exact);
  CHECK(r.exact_value == Rational(10));
  CHECK(r.mode == "symbolic");
  r = integrate(Integrand::from_expr(F("3*x^2+1")), Rational(2), Rational(0));
  CHECK(r.exact_value == Rational(-10));

  IntegralOptions no_symbolic;
  no_symbolic.symbolic = false;
  r = integrate(Integrand::from_expr(F("x^3")), Rational(0), Rational(1), no_symbolic);
  CHECK(r.tag == IntegralTag::certified);
  CHECK(std::fabs(r.value - 0.25) <= r.gap);

  r = integrate(Integrand::monotone(F("exp(x)"), Direction::increasing), Rational(0), Rational(1));
  CHECK(r.mode == "monotone");
  CHECK(r.tag == IntegralTag::certified);
  CHECK(std::fabs(r.value - (std::exp(1.0) - 1)) <= r.gap);
  CHECK(r.gap <= 1e-6 * (std::exp(1.0) - 1));

  r = integrate(Integrand::from_expr(F("sin(3*x)+x")), Rational(0), Rational(1));
  CHECK(r.tag == IntegralTag::sampled);
  CHECK(r.value == doctest::Approx((1 - std::cos(3.0)) / 3 + 0.5).epsilon(1e-5));
}

TEST_CASE("integration errors") {
  IntegralOptions tiny;
  tiny.max_cells = 16;
  CHECK(code_of([&] {
          integrate(Integrand::monotone(F("exp(x)"), Direction::increasing), Rational(0), Rational(1), tiny);
        }) == ErrorCode::depth_cap);
  const ErrorCode pole = code_of([] { integrate(Integrand::from_expr(F("1/x")), Rational(-1), Rational(1)); });
  CHECK((pole == ErrorCode::division_by_zero || pole == ErrorCode::unbounded_sample));
  CHECK(code_of([] {
          Integrand::from_expr(F("x")).with_patches({{Rational(0), Rational(1)}, {Rational(0), Rational(2)}});
        }) == ErrorCode::invalid_argument);
}

TEST_CASE("symbolic sum scales with the infinite index") {
  const Polynomial p = Polynomial::monomial(Rational(1), 3);
  const auto one = symbolic_integral_polynomial(p, Rational(0), Rational(2));
  const auto three = symbolic_integral_polynomial(p, Rational(0), Rational(2), 3);
  CHECK(one.value == Rational(4));
  CHECK(three.value == Rational(4));
  CHECK(classify(one.left_sum - HyperRat(one.value)).tag == Tag::infinitesimal);
  CHECK(one.slope_bound >= Rational(12));
}

TEST_CASE("accumulation function") {
  const Integrand f = Integrand::from_expr(F("x^2"));
  const auto rep = accumulation_check(f, Rational(0), Rational(1),
                                      {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}, 1e-3);
  CHECK(rep.additive);
  CHECK(rep.exact_additivity);
  REQUIRE(rep.points.size() == 4);
  CHECK(rep.points[1].value.exact_value == Rational(1, 24));
  CHECK(code_of([&] { accumulation_check(f, Rational(0), Rational(1), {Rational(2)}, 1e-3); }) ==
        ErrorCode::bad_interval);
}

TEST_CASE("derivative of the accumulation function") {
  const Integrand sq = Integrand::from_expr(F("x^2"));
  double previous = 1;
  for (int k = 2; k <= 10; ++k) {
    const Rational h(BigInt(1), BigInt(1) << k);
    const Rational y(1, 2);
    const auto rep = accumulation_check(sq, Rational(0), Rational(1), {y - h, y, y + h}, 1e-6);
    REQUIRE(rep.points[1].residual);
    // central quotient of F = x^3/3 exceeds y^2 by exactly h^2/3
    CHECK(*rep.points[1].residual == doctest::Approx((h * h / Rational(3)).to_double()).epsilon(1e-12));
    CHECK(*rep.points[1].residual < previous);
    previous = *rep.points[1].residual;
    if (k == 2) CHECK(*rep.points[1].residual == doctest::Approx(1.0 / 48));
    if (k == 10) CHECK(rep.within_tol);
  }
  const auto flat = accumulation_check(Integrand::from_expr(F("5")), Rational(0), Rational(1),
                                       {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}, 0);
  CHECK(flat.max_residual == 0);
  CHECK(flat.within_tol);
}

TEST_CASE("patched integrands") {
  const Integrand g = Integrand::from_expr(F("x")).with_patches({{Rational(1, 2), Rational(50)}});
  CHECK(g.value_exact(Rational(1, 2)) == Rational(50));
  CHECK(g.base_exact(Rational(1, 2)) == Rational(1, 2));
  const auto r = finite_modification_check(Integrand::from_expr(F("x")), {{Rational(1, 2), Rational(50)}},
                                           Rational(0), Rational(1), 1e-6);
  CHECK(r.ok());
  for (std::size_t i = 0; i < r.levels.size(); ++i) CHECK(r.levels[i].upper_diff <= r.levels[i].bound + 1e-12);
  CHECK(code_of([] {
          finite_modification_check(Integrand::from_expr(F("x")), {{Rational(3), Rational(1)}}, Rational(0),
                                    Rational(1), 1e-6);
        }) == ErrorCode::bad_interval);
}
