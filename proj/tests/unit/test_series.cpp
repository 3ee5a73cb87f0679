#include "doctest.h"

#include "hypercalc/parser.hpp"
#include "hypercalc/series.hpp"
#include "builders.hpp"

using namespace hypercalc;

namespace {
SeqExpr S(const char* s) { return parse_sequence(s); }
}  // namespace

TEST_CASE("closed-form partial sums match direct addition") {
  for (const char* term : {"n^2", "n^3-2*n+1", "geom(2)", "n*geom(1/2)", "altsign*n", "3*geom(-1/2)+n"}) {
    const SeqExpr s = series_partial_sum(S(term));
    Rational acc(0);
    for (long n = 0; n < 40; ++n) {
      acc += *oracle::seq_value(S(term).root(), n);
      CHECK(oracle::seq_value(s.root(), n) == acc);
    }
  }
}

TEST_CASE("series without a closed form need an antidifference") {
  CHECK_THROWS_AS(series_partial_sum(S("1/(n+1)")), Error);
  const SeqExpr s = series_partial_sum(S("1/((n+1)*(n+2))"), S("-1/(n+1)"));
  CHECK(oracle::seq_value(s.root(), 0) == Rational(1, 2));
  CHECK_THROWS_AS(series_partial_sum(S("1/(n+1)"), S("n")), Error);
}

TEST_CASE("series verdicts") {
  auto r = series_analyze(S("geom(1/3)"));
  CHECK(r.verdict == SeriesVerdict::converges);
  CHECK(r.value == Rational(3, 2));
  r = series_analyze(S("n*geom(1/2)"));
  CHECK(r.value == Rational(2));
  r = series_analyze(S("altsign"));
  CHECK(r.verdict == SeriesVerdict::diverges);
  CHECK_FALSE(r.diverges_to.has_value());
  r = series_analyze(S("-1/(2*n+2)"));
  CHECK(r.verdict == SeriesVerdict::diverges);
  CHECK(r.diverges_to == ExtendedValue::infinity(-1));
  r = series_analyze(S("1/(n+1)^3"));
  CHECK(r.verdict == SeriesVerdict::converges);
  CHECK(r.block_ratio == Rational(1, 4));
  CHECK(to_string(SeriesVerdict::inconclusive) == "inconclusive");
}

TEST_CASE("dyadic condensation") {
  const SeqExpr c = dyadic_condensation(S("1/(n+1)"));
  for (long k = 0; k < 12; ++k) {
    const long m = 1L << k;
    CHECK(oracle::seq_value(c.root(), k) == Rational(m) / Rational(m + 1));
  }
}

TEST_CASE("Cauchy product of two geometric series") {
  const auto r = cauchy_product_check(S("geom(1/2)"), S("geom(1/3)"), 40);
  CHECK(r.target == Rational(3));
  CHECK(r.error < 1e-9);
  CHECK(r.nonincreasing);
}
