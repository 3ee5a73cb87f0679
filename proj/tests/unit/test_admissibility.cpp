#include "doctest.h"

#include "hypercalc/admissibility.hpp"
#include "hypercalc/parser.hpp"
#include "builders.hpp"

using namespace hypercalc;

namespace {
ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::usage;
}
}  // namespace

TEST_CASE("antiderivative difference is admissible") {
  const Polynomial f = Polynomial::monomial(Rational(3), 2);
  const AdditiveFn B = antiderivative_difference(Polynomial::monomial(Rational(1), 3));
  CHECK(B.exact(Rational(1), Rational(2)) == Rational(7));
  CHECK(B.exact(Rational(2), Rational(2)) == Rational(0));
  const auto r = admissibility_check(B, Integrand::from_expr(oracle::func_of(f)), Rational(0), Rational(1),
                                     Rational(1, 4), 3);
  CHECK(r.levels.size() == 4);
  CHECK(r.total == Rational(1));
  CHECK(r.rectangular);
  CHECK(r.residual_halving);
  CHECK(r.matches_integral);
}

TEST_CASE("a wrong additive function is caught") {
  const Integrand f = Integrand::from_expr(parse_function("2*x"));
  // B(x, y) = y^2 - x^2 + 1/10 breaks B(x, x) = 0
  AdditiveFn shifted{"shifted", [](const Rational& x, const Rational& y) { return y * y - x * x + Rational(1, 10); }};
  CHECK(code_of([&] { admissibility_check(shifted, f, Rational(0), Rational(1), Rational(1, 4)); }) ==
        ErrorCode::additivity_violation);
  // B(x, y) = y^3 - x^3 is additive but not rectangular for f = 2x
  const AdditiveFn cubic = antiderivative_difference(Polynomial::monomial(Rational(1), 3));
  const auto r = admissibility_check(cubic, f, Rational(0), Rational(2), Rational(1, 4), 2);
  CHECK(r.total == Rational(8));
  CHECK_FALSE(r.rectangular);
  CHECK_FALSE(r.matches_integral);
  CHECK(r.levels.back().max_residual > Rational(0));
}

TEST_CASE("general integrands cannot be certified") {
  const Integrand g = Integrand::from_expr(parse_function("sin(x)"));
  const AdditiveFn B = antiderivative_difference(Polynomial::variable());
  CHECK(code_of([&] { admissibility_check(B, g, Rational(0), Rational(1), Rational(1, 4)); }) ==
        ErrorCode::unverifiable_bounds);
}
