// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hypercalc/admissibility.hpp"
#include "hypercalc/calculus.hpp"
#include "hypercalc/expr_eval.hpp"
#include "hypercalc/filters.hpp"
#include "hypercalc/hyper_exp.hpp"
#include "hypercalc/integral.hpp"
#include "hypercalc/parser.hpp"
#include "hypercalc/series.hpp"
#include "hypercalc/ultrapower.hpp"

#include "../support/builders.hpp"
#include "../support/oracles.hpp"

using namespace hypercalc;
using oracle::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

// ---------------------------------------------------------------- 1

Outcome field_order_axioms() {
  Outcome o;
  Rng rng(101);
  const HyperRat zero(0), one(1);
  int cases = 0;
  for (int t = 0; t < 1000; ++t) {
    const HyperRat a = oracle::random_hyper(rng), b = oracle::random_hyper(rng), c = oracle::random_hyper(rng);
    const std::string id = " (triple " + std::to_string(t) + ")";
    o.check(a + b == b + a, "additive commutativity" + id);
    o.check(a * b == b * a, "multiplicative commutativity" + id);
    o.check((a + b) + c == a + (b + c), "additive associativity" + id);
    o.check((a * b) * c == a * (b * c), "multiplicative associativity" + id);
    o.check(a * (b + c) == a * b + a * c, "distributivity" + id);
    o.check(a + zero == a && a * one == a, "identities" + id);
    o.check(a + (-a) == zero && a - b == a + (-b), "additive inverse" + id);
    if (!a.is_zero()) o.check(a * a.reciprocal() == one && b / a * a == b, "multiplicative inverse" + id);

    const int ab = oracle::compare(a, b), bc = oracle::compare(b, c), ac = oracle::compare(a, c);
    auto as_int = [](Order ord) { return ord == Order::less ? -1 : ord == Order::equal ? 0 : 1; };
    o.check(as_int(compare(a, b)) == ab && as_int(compare(b, c)) == bc && as_int(compare(a, c)) == ac,
            "order agrees with evaluation beyond the root bound" + id);
    o.check(as_int(compare(b, a)) == -ab, "antisymmetry" + id);
    if (a <= b && b <= c) o.check(a <= c, "transitivity" + id);
    if (a < b) {
      o.check(a + c < b + c, "translation invariance" + id);
      if (zero < c) o.check(a * c < b * c, "positive scaling" + id);
    }
    if (!a.is_zero()) o.check(zero < a * a, "squares positive" + id);
    ++cases;
  }
  o.detail = std::to_string(cases) + " random triples, degrees <= 6, heights <= 10^6";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome classification_st() {
  Outcome o;
  Rng rng(202);
  const Rational big = Rational(BigInt(10)).pow(80);
  auto finite_elem = [&] {
    const int dd = static_cast<int>(oracle::uniform(rng, 0, 4));
    const int dn = static_cast<int>(oracle::uniform(rng, 0, dd));
    return HyperRat(oracle::random_poly(rng, dn, 1000), oracle::random_poly(rng, dd, 1000));
  };
  auto tag_oracle = [](const HyperRat& a) {
    if (a.is_zero()) return Tag::zero;
    const int g = oracle::growth_order(a);
    return g > 0 ? Tag::infinite : g == 0 ? Tag::appreciable : Tag::infinitesimal;
  };
  auto infinitesimal = [](const HyperRat& a) {
    const Tag t = classify(a).tag;
    return t == Tag::zero || t == Tag::infinitesimal;
  };
  for (int t = 0; t < 1000; ++t) {
    const std::string id = " (case " + std::to_string(t) + ")";
    const HyperRat g = oracle::random_hyper(rng);
    const Classification cg = classify(g);
    o.check(cg.tag == tag_oracle(g), "tag matches degree count" + id);
    const int sg = oracle::compare(g, HyperRat(0));
    o.check(cg.sign == sign_of(sg), "sign matches evaluation" + id);
    // reciprocal duality
    if (!g.is_zero()) {
      const Tag r = classify(g.reciprocal()).tag;
      o.check((cg.tag == Tag::infinitesimal) == (r == Tag::infinite), "reciprocal duality" + id);
      o.check((cg.tag == Tag::appreciable) == (r == Tag::appreciable), "appreciable reciprocal" + id);
    }

    const HyperRat a = finite_elem(), b = finite_elem();
    const HyperRat e1 = a * HyperRat::epsilon(), e2 = b * HyperRat::epsilon().pow(2);
    // closure and ideal absorption
    o.check(infinitesimal(e1 + e2) && infinitesimal(e1 - e2) && infinitesimal(e1 * e2),
            "infinitesimals closed" + id);
    o.check(classify(a + b).is_finite() && classify(a * b).is_finite() && classify(a - b).is_finite(),
            "finite elements closed" + id);
    o.check(infinitesimal(e1 * a) && infinitesimal(b * e2), "ideal absorption" + id);

    const Rational sa = standard_part(a), sb = standard_part(b);
    // independent value: evaluation at index 10^80
    o.check((oracle::at(a, big) - sa).abs() < Rational(BigInt(10)).pow(-30), "st matches evaluation" + id);
    o.check(standard_part(a + b) == sa + sb && standard_part(a - b) == sa - sb, "st additive" + id);
    o.check(standard_part(a * b) == sa * sb, "st multiplicative" + id);
    if (a <= b) o.check(sa <= sb, "st monotone" + id);
    o.check(standard_part(a.abs()) == sa.abs(), "st of |a|" + id);
    const HyperRat mx = a <= b ? b : a, mn = a <= b ? a : b;
    o.check(standard_part(mx) == max(sa, sb) && standard_part(mn) == min(sa, sb), "st of max/min" + id);
    o.check(sa.is_zero() == infinitesimal(a), "st zero iff infinitesimal" + id);
    const Rational r = oracle::random_rational(rng, 1000);
    o.check(standard_part(HyperRat(r)) == r, "st fixes standard numbers" + id);
    o.check(!(sa.sign() >= 0) || infinitely_close(a.abs(), HyperRat(sa)), "|a| in monad of st a" + id);
    const bool close = infinitely_close(a, b);
    o.check(close == infinitesimal(a - b) && close == (sa == sb), "infinite closeness" + id);
    if (sa <= sb) o.check(infinitesimal(a - b) || a <= b, "order from st" + id);
    if (cg.tag == Tag::infinite) {
      const HyperRat nonneg = a.sign() >= 0 ? a : -a;
      const HyperRat moved = cg.sign == Sign::positive ? g + nonneg : g - nonneg;
      o.check(classify(moved).tag == Tag::infinite && classify(moved).sign == cg.sign, "infinite shift" + id);
    }
  }
  o.detail = "1000 random elements; closure, absorption, duality, standard-part laws";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome worked_examples() {
  Outcome o;
  auto seq = [](const char* s) { return parse_sequence(s); };
  // (1/n)^2 patched at 0, and x^n for x = 1/3
  {
    const auto r1 = analyze(seq("patch[(0,0)]{(1/n)^2}"));
    o.check(r1.converges_to && r1.converges_to->is_zero(), "(1/n)^2 -> 0");
    const auto r2 = analyze(seq("geom(1/3)"));
    o.check(r2.converges_to && r2.converges_to->is_zero(), "(1/3)^n -> 0");
    const auto r3 = analyze(seq("geom(-1/3)"));
    o.check(r3.converges_to && r3.converges_to->is_zero(), "(-1/3)^n -> 0");
  }
  // oscillating (-1)^n (1 + 1/(n+1))
  {
    const auto r = analyze(seq("altsign*(1+1/(n+1))"));
    const std::set<ExtendedValue> want = {ExtendedValue::finite(Rational(-1)), ExtendedValue::finite(Rational(1))};
    o.check(r.limit_points == want, "limit set {-1, 1}");
    o.check(r.limsup == ExtendedValue::finite(Rational(1)) && r.liminf == ExtendedValue::finite(Rational(-1)),
            "limsup 1, liminf -1");
    o.check(!r.cauchy && !r.converges_to, "not Cauchy");
  }
  // (-1)^n
  {
    bool thrown = false;
    try {
      (void)to_hyper(seq("altsign"));
    } catch (const UltrafilterDependence& e) {
      thrown = std::set<std::string>{e.even_candidate(), e.odd_candidate()} == std::set<std::string>{"1", "-1"};
    }
    o.check(thrown, "altsign dependence with candidates {1, -1}");
    const auto v = frechet_compare(seq("altsign"), seq("1"));
    o.check(v.relation == Relation::ultrafilter_dependent && v.even == Relation::equal && v.odd == Relation::less,
            "altsign vs 1 classes");
  }
  // telescoping 1/((k+1)(k+2))
  {
    const auto r = series_analyze(seq("1/((n+1)*(n+2))"), seq("-1/(n+1)"));
    o.check(r.verdict == SeriesVerdict::converges && r.value == Rational(1), "telescoping sum = 1");
    const auto a = series_partial_sum(seq("1/((n+1)*(n+2))"), seq("-1/(n+1)"));
    for (long n = 0; n <= 50; ++n)
      o.check(oracle::seq_value(a.root(), n) ==
                  oracle::direct_sum([](long k) { return Rational(1) / Rational((k + 1) * (k + 2)); }, 0, n),
              "telescoping partial sum at n = " + std::to_string(n));
  }
  // geometric series
  for (const Rational x : {Rational(1, 2), Rational(-1, 3)}) {
    const auto r = series_analyze(SeqExpr::geom(x));
    o.check(r.verdict == SeriesVerdict::converges && r.value == Rational(1) / (Rational(1) - x),
            "geometric sum for x = " + x.to_string());
  }
  {
    const auto r = series_analyze(SeqExpr::geom(Rational(3, 2)));
    o.check(r.verdict == SeriesVerdict::diverges && r.diverges_to == ExtendedValue::infinity(1),
            "geometric x = 3/2 diverges");
  }
  // harmonic and p = 2 by dyadic blocks
  {
    const auto h = series_analyze(seq("1/(n+1)"));
    o.check(h.verdict == SeriesVerdict::diverges && h.method == "dyadic_blocks" && h.block_floor == Rational(1, 2),
            "harmonic diverges with block floor 1/2");
    const auto p2 = series_analyze(seq("1/(n+1)^2"));
    o.check(p2.verdict == SeriesVerdict::converges && p2.method == "dyadic_blocks" &&
                p2.block_ratio == Rational(1, 2) && !p2.value,
            "p = 2 converges with block ratio 1/2");
  }
  // sin x / x at 0
  {
    const auto v = lhospital(parse_function("sin(x)"), parse_function("x"), Scalar(0));
    o.check(v.kind == LimitValue::Kind::finite && std::fabs(v.value.to_double() - 1.0) <= 1e-15, "sin x / x -> 1");
  }
  // step function on [0, 2]: even and odd splits
  {
    const Integrand step = Integrand::custom(
        "step", [](const Rational& x) { return Rational(x < Rational(1) ? 0 : 1); },
        [](double x) { return x < 1.0 ? 0.0 : 1.0; }, IntegrandKind::monotone, Direction::increasing);
    AdditiveFn B;
    B.name = "integral of the step";
    B.exact = [](const Rational& x, const Rational& y) {
      auto F = [](const Rational& t) { return max(Rational(0), t - Rational(1)); };
      return F(y) - F(x);
    };
    IntegralOptions opts;
    opts.tol = 1e-4;
    for (long m : {3L, 5L, 8L}) {
      const auto even = admissibility_check(B, step, Rational(0), Rational(2), Rational(2, 2 * m), 0, opts);
      o.check(even.levels[0].max_residual.is_zero() && even.rectangular,
              "even split 2/" + std::to_string(2 * m) + " residual 0");
      const auto odd = admissibility_check(B, step, Rational(0), Rational(2), Rational(2, 2 * m + 1), 0, opts);
      o.check(odd.levels[0].max_residual == Rational(1, 2) && odd.levels[0].nonzero_cells == 1 && odd.rectangular,
              "odd split 2/" + std::to_string(2 * m + 1) + " has one straddling cell with residual 1/2");
      o.check(even.matches_integral && odd.matches_integral, "B(0,2) within the integral bracket");
    }
  }
  o.detail = "sequence limits, dependence, series sums and tests, sin x/x, step-function splits";
  return o;
}

// ---------------------------------------------------------------- 4

namespace fl = hypercalc::filters;

bool oracle_is_filter(unsigned n, const std::set<fl::Subset>& F) {
  const fl::Subset X = (fl::Subset{1} << n) - 1;
  if (F.empty() || F.count(0)) return false;
  for (fl::Subset a : F) {
    for (fl::Subset b : F)
      if (!F.count(a & b)) return false;
    for (fl::Subset s = 0; s <= X; ++s)
      if ((s & a) == a && !F.count(s)) return false;
  }
  return true;
}

std::set<fl::Subset> as_set(const fl::FiniteFamily& f) { return {f.members().begin(), f.members().end()}; }

bool contains_all(const std::set<fl::Subset>& big, const std::set<fl::Subset>& small) {
  for (auto s : small)
    if (!big.count(s)) return false;
  return true;
}

Outcome filter_suite() {
  Outcome o;
  std::size_t families = 0;
  for (unsigned n = 1; n <= 4; ++n) {
    const unsigned subsets = 1u << n;
    const fl::Subset X = subsets - 1;
    std::vector<std::set<fl::Subset>> filters_found;
    for (std::uint32_t mask = 0; mask < (1u << subsets); ++mask) {
      std::vector<fl::Subset> members;
      for (unsigned s = 0; s < subsets; ++s)
        if (mask >> s & 1u) members.push_back(s);
      const fl::FiniteFamily fam(n, members);
      const std::set<fl::Subset> set(members.begin(), members.end());
      const bool is_f = oracle_is_filter(n, set);
      o.check(fl::is_filter(fam) == is_f, "is_filter on |X| = " + std::to_string(n));
      if (is_f) filters_found.push_back(set);
      ++families;
    }
    // ultrafilters are the maximal filters, and exactly the principal ones at points
    std::set<std::set<fl::Subset>> maximal;
    for (const auto& f : filters_found) {
      bool is_max = true;
      for (const auto& g : filters_found)
        if (g.size() > f.size() && contains_all(g, f)) is_max = false;
      if (is_max) maximal.insert(f);
    }
    std::set<std::set<fl::Subset>> principal_points;
    for (unsigned i = 0; i < n; ++i) principal_points.insert(as_set(fl::principal_filter(n, fl::Subset{1} << i)));
    o.check(maximal == principal_points, "maximal filters are the point filters, |X| = " + std::to_string(n));
    for (const auto& f : filters_found) {
      const fl::FiniteFamily fam(n, {f.begin(), f.end()});
      o.check(fl::is_ultrafilter(fam) == (maximal.count(f) > 0), "is_ultrafilter agrees with maximality");
      // extension
      const auto u = fl::extend_to_ultrafilter(fam);
      o.check(maximal.count(as_set(u)) && contains_all(as_set(u), f), "extension is an ultrafilter containing F");
    }
    for (const auto& u : maximal) {
      for (fl::Subset a = 0; a <= X; ++a) {
        // dichotomy
        o.check(u.count(a) + u.count(X & ~a) == 1, "exactly one of A, X - A");
        for (fl::Subset b = 0; b <= X; ++b)
          if (u.count(a | b)) o.check(u.count(a) || u.count(b), "primeness");
      }
    }
    // generated filter is the intersection of all filters containing the base
    for (std::uint32_t mask = 1; mask < (1u << subsets) && n <= 3; ++mask) {
      std::vector<fl::Subset> base;
      for (unsigned s = 0; s < subsets; ++s)
        if (mask >> s & 1u) base.push_back(s);
      std::set<fl::Subset> inter;
      bool any = false;
      for (const auto& f : filters_found) {
        bool covers = true;
        for (auto s : base) covers = covers && f.count(s);
        if (!covers) continue;
        if (!any) inter = f;
        else {
          std::set<fl::Subset> next;
          for (auto s : inter)
            if (f.count(s)) next.insert(s);
          inter = next;
        }
        any = true;
      }
      bool fip_error = false;
      std::set<fl::Subset> gen;
      try {
        gen = as_set(fl::generate_from_base(n, fl::FiniteFamily(n, base)));
      } catch (const Error& e) {
        fip_error = e.code() == ErrorCode::fip_violation;
      }
      if (any) o.check(!fip_error && gen == inter, "generated filter is minimal");
      else o.check(fip_error, "base without a containing filter is rejected");
    }
  }
  // bases on |X| = 4 checked by sampling, as the base space has 2^16 entries
  {
    Rng rng(404);
    const unsigned n = 4;
    for (int t = 0; t < 2000; ++t) {
      std::vector<fl::Subset> base;
      const long k = oracle::uniform(rng, 1, 4);
      for (long i = 0; i < k; ++i) base.push_back(static_cast<fl::Subset>(oracle::uniform(rng, 1, 15)));
      fl::Subset inter = 15;
      for (auto s : base) inter &= s;
      if (inter == 0) {
        bool thrown = false;
        try {
          (void)fl::generate_from_base(n, fl::FiniteFamily(n, base));
        } catch (const Error& e) {
          thrown = e.code() == ErrorCode::fip_violation;
        }
        o.check(thrown, "fip violation detected on |X| = 4");
      } else {
        o.check(fl::generate_from_base(n, fl::FiniteFamily(n, base)) == fl::principal_filter(n, inter),
                "generated filter on |X| = 4 is principal at the intersection");
      }
    }
  }
  // |X| = 5: every ultrafilter picks one set from each complementary pair
  {
    const unsigned n = 5;
    const fl::Subset X = 31;
    int ultra = 0;
    for (std::uint32_t choice = 0; choice < (1u << 16); ++choice) {
      std::vector<fl::Subset> members;
      for (fl::Subset s = 0; s < 16; ++s) members.push_back((choice >> s & 1u) ? (X & ~s) : s);
      const fl::FiniteFamily fam(n, members);
      if (fl::is_filter(fam)) {
        ++ultra;
        o.check(fl::is_ultrafilter(fam), "filter picked from complementary pairs is an ultrafilter");
      }
    }
    o.check(ultra == 5, "|X| = 5 has exactly 5 ultrafilters (found " + std::to_string(ultra) + ")");
  }
  // randomized up to |X| = 10
  {
    Rng rng(505);
    for (int t = 0; t < 300; ++t) {
      const unsigned n = static_cast<unsigned>(oracle::uniform(rng, 5, 10));
      const fl::Subset X = (fl::Subset{1} << n) - 1;
      std::vector<fl::Subset> base;
      for (long i = 0, k = oracle::uniform(rng, 1, 3); i < k; ++i)
        base.push_back(static_cast<fl::Subset>(oracle::uniform(rng, 1, X)) | 1u);  // all share element 0
      const auto F = fl::generate_from_base(n, fl::FiniteFamily(n, base));
      fl::Subset core = X;
      for (auto s : base) core &= s;
      o.check(fl::is_filter(F) && F == fl::principal_filter(n, core), "random generated filter");
      o.check(fl::is_ultrafilter(F) == (std::popcount(core) == 1), "ultrafilter iff generated by a point");
      const auto U = fl::extend_to_ultrafilter(F);
      const auto uset = as_set(U);
      o.check(fl::is_ultrafilter(U) && contains_all(uset, as_set(F)), "random extension");
      for (int q = 0; q < 50; ++q) {
        const auto a = static_cast<fl::Subset>(oracle::uniform(rng, 0, X));
        const auto b = static_cast<fl::Subset>(oracle::uniform(rng, 0, X));
        o.check(uset.count(a) + uset.count(X & ~a) == 1, "random dichotomy");
        if (uset.count(a | b)) o.check(uset.count(a) || uset.count(b), "random primeness");
      }
    }
  }
  o.detail = std::to_string(families) + " families enumerated for |X| <= 4; |X| = 5 count; 300 random up to |X| = 10";
  return o;
}

// ---------------------------------------------------------------- 5

ExprPtr substitute(const ExprPtr& outer, const ExprPtr& inner) {
  if (outer->op == Op::variable) return inner;
  if (outer->args.empty()) return outer;
  auto copy = std::make_shared<ExprNode>(*outer);
  for (auto& a : copy->args) a = substitute(a, inner);
  return copy;
}

struct RatFn {
  Polynomial num, den;
  FuncExpr expr() const { return oracle::func_of(num) / oracle::func_of(den); }
  Rational value(const Rational& p) const { return num(p) / den(p); }
  Rational slope(const Rational& p) const {
    const Rational d = den(p);
    return (num.derivative()(p) * d - num(p) * den.derivative()(p)) / (d * d);
  }
};

Outcome derivative_suite() {
  Outcome o;
  Rng rng(606);
  auto random_fn = [&] {
    return RatFn{oracle::random_poly(rng, static_cast<int>(oracle::uniform(rng, 0, 3)), 9),
                 oracle::random_poly(rng, static_cast<int>(oracle::uniform(rng, 0, 2)), 9)};
  };
  int exact_cases = 0;
  while (exact_cases < 1000) {
    const RatFn f = random_fn(), g = random_fn();
    const Rational p = oracle::random_rational(rng, 12);
    if (f.den(p).is_zero() || g.den(p).is_zero() || g.value(p).is_zero()) continue;
    const Rational fp = f.value(p);
    if (g.den(fp).is_zero()) continue;
    ++exact_cases;
    const std::string id = " (case " + std::to_string(exact_cases) + ")";
    const FuncExpr F = f.expr(), G = g.expr();
    const Scalar df = derivative(F, Scalar(p), ScalarMode::exact);
    const Scalar dg = derivative(G, Scalar(p), ScalarMode::exact);
    o.check(df.is_exact() && df.exact() == f.slope(p), "derivative matches quotient-rule oracle" + id);
    const Rational gp = g.value(p);
    o.check(derivative(F * G, Scalar(p), ScalarMode::exact).exact() == fp * dg.exact() + df.exact() * gp,
            "product rule" + id);
    o.check(derivative(F / G, Scalar(p), ScalarMode::exact).exact() ==
                (df.exact() * gp - fp * dg.exact()) / (gp * gp),
            "quotient rule" + id);
    const FuncExpr GoF(substitute(G.ptr(), F.ptr()));
    o.check(derivative(GoF, Scalar(p), ScalarMode::exact).exact() == g.slope(fp) * df.exact(), "chain rule" + id);
  }

  struct Battery {
    const char* f;
    std::function<double(double)> value;
    double lo, hi;
  };
  const std::vector<Battery> battery = {
      {"sin(x)", [](double x) { return std::sin(x); }, -2, 2},
      {"cos(x)", [](double x) { return std::cos(x); }, -2, 2},
      {"exp(x)", [](double x) { return std::exp(x); }, -2, 2},
      {"ln(x)", [](double x) { return std::log(x); }, 0.2, 4},
      {"sqrt(x)", [](double x) { return std::sqrt(x); }, 0.2, 4},
      {"x^3-2*x", [](double x) { return x * x * x - 2 * x; }, -2, 2},
      {"1/(1+x^2)", [](double x) { return 1 / (1 + x * x); }, -2, 2},
      {"exp(sin(x))", [](double x) { return std::exp(std::sin(x)); }, -2, 2},
      {"x*ln(x)", [](double x) { return x * std::log(x); }, 0.2, 4},
      {"sin(x)^2", [](double x) { return std::sin(x) * std::sin(x); }, -2, 2},
      {"cos(x^2)", [](double x) { return std::cos(x * x); }, -1.5, 1.5},
      {"sqrt(1+x^2)", [](double x) { return std::sqrt(1 + x * x); }, -2, 2},
      {"ln(1+x^2)", [](double x) { return std::log(1 + x * x); }, -2, 2},
      {"x/(1+x)", [](double x) { return x / (1 + x); }, 0, 3},
      {"exp(-x^2)", [](double x) { return std::exp(-x * x); }, -2, 2},
      {"abs(x)*x", [](double x) { return std::fabs(x) * x; }, 0.1, 2},
      {"sin(x)/cos(x)", [](double x) { return std::tan(x); }, -1.2, 1.2},
      {"x^5-x^4+3", [](double x) { return std::pow(x, 5) - std::pow(x, 4) + 3; }, -1.5, 1.5},
      {"(x^2+1)/(x-3)", [](double x) { return (x * x + 1) / (x - 3); }, -2, 2},
      {"sin(x)*exp(x)", [](double x) { return std::sin(x) * std::exp(x); }, -2, 2},
  };
  int battery_points = 0;
  double worst = 0;
  for (const auto& b : battery) {
    const FuncExpr f = parse_function(b.f);
    for (int k = 0; k < 10; ++k) {
      const double x = b.lo + (b.hi - b.lo) * (k + 0.5) / 10;
      const double h = 1e-6;
      const double fd = (b.value(x + h) - b.value(x - h)) / (2 * h);
      const double d = derivative(f, Scalar(x)).to_double();
      const double rel = std::fabs(d - fd) / std::max(std::fabs(fd), 1e-300);
      worst = std::max(worst, rel);
      o.check(rel <= 1e-6, std::string("central difference for ") + b.f + " at " + std::to_string(x));
      ++battery_points;
    }
  }
  o.check(derivative(parse_function("cos(x)"), Scalar(0)).to_double() == 0.0, "extremum of cos at 0");
  o.check(derivative(parse_function("x^2-2*x"), Scalar(1)) == Scalar(Rational(0)), "extremum of x^2-2x at 1");

  // increment identity: exact on rational functions, consistent in float mode
  Rng rng2(607);
  int increment_cases = 0;
  for (int t = 0; t < 60; ++t) {
    const RatFn f{oracle::random_poly(rng2, static_cast<int>(oracle::uniform(rng2, 0, 6)), 9),
                  oracle::random_poly(rng2, static_cast<int>(oracle::uniform(rng2, 0, 2)), 9)};
    const Rational p = oracle::random_rational(rng2, 7);
    if (f.den(p).is_zero()) continue;
    for (unsigned n = 1; n <= 6; ++n) {
      const auto r = nth_derivative_via_increments(f.expr(), Scalar(p), n, ScalarMode::exact);
      const LiftedJet j = jet_lift(f.expr(), Scalar(p), n, ScalarMode::exact);
      Rational factorial(1);
      for (unsigned i = 2; i <= n; ++i) factorial *= Rational(static_cast<long>(i));
      o.check(r.value.is_exact() && r.value.exact() == factorial * j.coeff(n).exact() && r.lower_cancel,
              "exact increment identity, n = " + std::to_string(n));
      ++increment_cases;
    }
  }
  for (const char* s : {"sin(x)", "exp(x)", "ln(1+x^2)", "sqrt(2+x)"}) {
    for (unsigned n = 1; n <= 6; ++n) {
      const auto r = nth_derivative_via_increments(parse_function(s), Scalar(0.5), n);
      o.check(r.consistent && r.lower_cancel, std::string("float increment identity for ") + s);
    }
  }
  std::ostringstream d;
  d << exact_cases << " exact rule cases; " << battery_points << " battery points, worst relative error " << worst
    << "; " << increment_cases << " exact increment cases";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- 6

Outcome integration_suite() {
  Outcome o;
  const Rational zero(0), one(1);
  for (int m = 0; m <= 12; ++m) {
    const Integrand f = Integrand::from_expr(pow(FuncExpr::x(), m));
    const auto r = integrate(f, zero, one);
    o.check(r.tag == IntegralTag::exact && r.exact_value == Rational(1, m + 1),
            "x^" + std::to_string(m) + " integrates to 1/(m+1)");
  }

  // monotone gap law
  {
    const Integrand cube = Integrand::monotone(parse_function("x^3"), Direction::increasing);
    const Integrand recip = Integrand::monotone(parse_function("1/(1+x)"), Direction::decreasing);
    const Integrand step = Integrand::custom(
        "step", [](const Rational& x) { return Rational(x < Rational(1) ? 0 : 1); },
        [](double x) { return x < 1.0 ? 0.0 : 1.0; }, IntegrandKind::monotone, Direction::increasing);
    for (const auto* f : {&cube, &recip, &step}) {
      for (long cells : {1L, 3L, 7L, 64L, 1000L}) {
        const Rational a(0), b(2), dx = (b - a) / Rational(cells);
        const auto s = lower_upper_sums(*f, build_partition(a, b, dx), Execution::parallel, ExactPolicy::require);
        o.check(s.exact->upper - s.exact->lower == dx * (f->value_exact(b) - f->value_exact(a)).abs(),
                "monotone gap law for " + f->name() + " with " + std::to_string(cells) + " cells");
      }
    }
    const auto r = integrate(step, Rational(0), Rational(2));
    o.check(r.exact_bounds && r.exact_bounds->lower <= Rational(1) && Rational(1) <= r.exact_bounds->upper &&
                std::fabs(r.value - 1.0) <= r.gap,
            "step integral brackets 1");
  }

  // refinement monotonicity
  {
    const std::vector<Integrand> battery = {
        Integrand::from_expr(parse_function("x^2-x")),
        Integrand::from_expr(parse_function("x^3-2*x+1")),
        Integrand::from_expr(parse_function("4*x^4-5*x^2+1")),
        Integrand::monotone(parse_function("x^3"), Direction::increasing),
        Integrand::monotone(parse_function("1/(2+x)"), Direction::decreasing),
    };
    for (const auto& f : battery) {
      for (const Rational dx : {Rational(1, 3), Rational(2, 7), Rational(1, 10)}) {
        const Rational a(-1), b(2);
        const auto coarse = lower_upper_sums(f, build_partition(a, b, dx), Execution::serial, ExactPolicy::require);
        for (long p : {2L, 3L, 5L}) {
          const auto fine =
              lower_upper_sums(f, build_partition(a, b, dx / Rational(p)), Execution::serial, ExactPolicy::require);
          o.check(coarse.exact->lower <= fine.exact->lower && fine.exact->upper <= coarse.exact->upper &&
                      fine.exact->lower <= fine.exact->upper,
                  "refinement by " + std::to_string(p) + " for " + f.name());
        }
      }
    }
  }

  // sin on [0, pi/2]
  {
    const double half_pi = std::acos(0.0);
    const Rational b = Rational::from_double(half_pi);
    const auto r = integrate(Integrand::monotone(parse_function("sin(x)"), Direction::increasing), zero, b);
    const double truth = 1.0 - std::cos(b.to_double());  // antiderivative at the rounded endpoint
    o.check(r.tag == IntegralTag::certified && r.gap <= 1e-6, "sin integral carries a certified gap <= 1e-6");
    o.check(std::fabs(r.value - 1.0) <= 1e-6 && std::fabs(r.value - truth) <= r.gap, "sin integral = 1 within 1e-6");
  }

  // additivity, linearity and the antiderivative oracle on random polynomials
  {
    Rng rng(707);
    for (int t = 0; t < 100; ++t) {
      const Polynomial p = oracle::random_poly(rng, static_cast<int>(oracle::uniform(rng, 0, 6)), 50);
      const Polynomial q = oracle::random_poly(rng, static_cast<int>(oracle::uniform(rng, 0, 6)), 50);
      const Rational a = oracle::random_rational(rng, 20), c = a + oracle::random_rational(rng, 20).abs() + one;
      const Rational b = c + oracle::random_rational(rng, 20).abs() + one;
      const Rational k = oracle::random_rational(rng, 30);
      auto I = [](const Polynomial& f, const Rational& lo, const Rational& hi) {
        return *integrate(Integrand::from_expr(oracle::func_of(f)), lo, hi).exact_value;
      };
      const Polynomial P = oracle::antiderivative(p);
      o.check(I(p, a, b) == P(b) - P(a), "antiderivative oracle");
      o.check(I(p, a, c) + I(p, c, b) == I(p, a, b), "additivity at an interior point");
      o.check(I(p + q, a, b) == I(p, a, b) + I(q, a, b), "additive linearity");
      o.check(I(p * k, a, b) == k * I(p, a, b), "scalar linearity");
      o.check(symbolic_integral_polynomial(p, a, b, 2).value == symbolic_integral_polynomial(p, a, b, 1).value,
              "value unchanged when the infinite index doubles");
    }
  }

  // finite modification
  {
    const Integrand sq = Integrand::from_expr(parse_function("x^2"));
    const auto r1 = finite_modification_check(sq, {{Rational(1, 2), Rational(100)}}, zero, one, 1e-6);
    o.check(r1.ok() && std::fabs(r1.integral_g - 1.0 / 3) <= 1e-6, "x^2 patched at 1/2");
    const auto r2 = finite_modification_check(sq, {{zero, Rational(-7)}, {one, Rational(9)}}, zero, one, 1e-6);
    o.check(r2.ok() && std::fabs(r2.integral_g - 1.0 / 3) <= 1e-6, "x^2 patched at both endpoints");
    const auto r3 = finite_modification_check(sq, {}, zero, one, 1e-6);
    o.check(r3.ok() && r3.integral_g == r3.integral_f, "no modified points");
  }
  o.detail = "powers to 12, gap law, refinement p in {2,3,5}, sin, 100 random additivity/linearity cases, patches";
  return o;
}

// ---------------------------------------------------------------- 7

Outcome admissibility_suite() {
  Outcome o;
  const std::vector<std::pair<const char*, Polynomial>> battery = {
      {"1", Polynomial::constant(Rational(1))},
      {"2x-1", Polynomial{Rational(-1), Rational(2)}},
      {"x^2", Polynomial::monomial(Rational(1), 2)},
      {"x^3-x", Polynomial{Rational(0), Rational(-1), Rational(0), Rational(1)}},
      {"1-3x+x^4", Polynomial{Rational(1), Rational(-3), Rational(0), Rational(0), Rational(1)}},
      {"x^5/5-x^2", Polynomial{Rational(0), Rational(0), Rational(-1), Rational(0), Rational(0), Rational(1, 5)}},
  };
  std::ostringstream d;
  for (const auto& [name, p] : battery) {
    const Integrand f = Integrand::from_expr(oracle::func_of(p));
    const AdditiveFn B = antiderivative_difference(oracle::antiderivative(p));
    for (const auto& [a, b, delta] : {std::tuple{Rational(0), Rational(1), Rational(1, 4)},
                                      std::tuple{Rational(-1), Rational(2), Rational(1, 3)}}) {
      const auto r = admissibility_check(B, f, a, b, delta, 6);
      const std::string id = std::string(name) + " on [" + a.to_string() + ", " + b.to_string() + "]";
      o.check(r.rectangular, "rectangular property for " + id);
      o.check(r.residual_halving, "residual at least halves per halving for " + id);
      o.check(r.matches_integral, "B(a,b) matches the integral for " + id);
      if (a.is_zero()) d << name << ": " << r.levels.front().max_residual.to_double() << " -> "
                         << r.levels.back().max_residual.to_double() << "; ";
    }
  }
  o.detail = "6 polynomials x 2 intervals x 7 levels; max residual " + d.str();
  return o;
}

// ---------------------------------------------------------------- 8

Outcome frechet_soundness() {
  Outcome o;
  Rng rng(808);
  int decisive = 0, dependent = 0, skipped = 0;
  auto rel_at = [](const SeqExpr& a, const SeqExpr& b, long n) -> std::optional<Relation> {
    const auto x = oracle::seq_value(a.root(), n), y = oracle::seq_value(b.root(), n);
    if (!x || !y) return std::nullopt;
    return *x < *y ? Relation::less : *y < *x ? Relation::greater : Relation::equal;
  };
  std::vector<std::pair<SeqExpr, SeqExpr>> pairs;
  for (int t = 0; t < 160; ++t) pairs.emplace_back(oracle::random_seq(rng, 3), oracle::random_seq(rng, 3));
  for (int t = 0; t < 40; ++t) {
    const SeqExpr a = oracle::random_seq(rng, 2);
    pairs.emplace_back(a, SeqExpr::patch({{static_cast<std::uint64_t>(t), Rational(t)}}, a));
  }
  for (const auto& [a, b] : pairs) {
    FrechetVerdict v;
    try {
      v = frechet_compare(a, b);
    } catch (const Error& e) {
      ++skipped;
      continue;
    }
    const long lo = static_cast<long>(v.exception_bound);
    const std::string id = " for " + a.to_string() + " vs " + b.to_string();
    if (v.decisive()) {
      ++decisive;
      bool ok = true;
      for (long n = lo; n <= lo + 1000 && ok; ++n) ok = rel_at(a, b, n) == v.relation;
      o.check(ok, "decisive verdict holds pointwise" + id);
    } else {
      ++dependent;
      bool ok = v.even != v.odd;
      for (long n = lo; n <= lo + 1000 && ok; ++n) {
        const auto r = rel_at(a, b, n);
        ok = r == (n % 2 == 0 ? v.even : v.odd);
      }
      o.check(ok, "dependent verdict alternates in every window of 2" + id);
    }
  }
  o.check(decisive > 0 && dependent > 0, "both verdict kinds exercised");
  o.detail = std::to_string(decisive) + " decisive, " + std::to_string(dependent) + " dependent, " +
             std::to_string(skipped) + " outside the decidable fragment";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"field and order axioms", field_order_axioms},
      {"classification and standard part", classification_st},
      {"worked examples", worked_examples},
      {"filters", filter_suite},
      {"derivatives", derivative_suite},
      {"integration", integration_suite},
      {"admissibility", admissibility_suite},
      {"cofinite decision soundness", frechet_soundness},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("    failed: %s\n", f.c_str());
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
