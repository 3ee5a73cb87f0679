#include "hypercalc/admissibility.hpp"

#include <cmath>

#include "hypercalc/error.hpp"

namespace hypercalc {

namespace {

constexpr int kSamplesPerCell = 8;  // p = left + j*w/8, j = 0..8; includes the midpoint

void check_additivity(const AdditiveFn& B, const SimplePartition& p) {
  Rational running(0);
  for (std::uint64_t i = 0; i < p.cells(); ++i) {
    const Rational l = p.point(i), r = p.point(i + 1);
    if (!B.exact(l, l).is_zero())
      throw Error(ErrorCode::additivity_violation, "B(x, x) != 0 at x = " + l.to_string());
    running += B.exact(l, r);
    if (running != B.exact(p.a, r))
      throw Error(ErrorCode::additivity_violation, "B is not additive at x = " + r.to_string());
  }
}

AdmissibilityLevel run_level(const AdditiveFn& B, const Integrand& f, const CellBounds& cb,
                             const SimplePartition& p) {
  AdmissibilityLevel lv;
  lv.delta = p.delta;
  lv.rectangular = true;
  lv.max_residual = Rational(0);
  for (std::uint64_t i = 0; i < p.cells(); ++i) {
    const Rational w = p.width(i);
    if (w.is_zero()) continue;
    CellResidual c;
    c.left = p.point(i);
    c.right = p.point(i + 1);
    const Rational value = B.exact(c.left, c.right);
    c.ratio = value / w;
    for (int j = 0; j <= kSamplesPerCell; ++j) {
      const Rational x = c.left + w * Rational(j, kSamplesPerCell);
      const Rational r = (c.ratio - f.value_exact(x)).abs();
      if (j == 0 || r < c.residual) c.residual = r;
    }
    const auto [m, M] = cb.exact_patched(c.left, c.right);
    c.rectangular = m * w <= value && value <= M * w;
    lv.rectangular = lv.rectangular && c.rectangular;
    if (!c.residual.is_zero()) ++lv.nonzero_cells;
    lv.max_residual = max(lv.max_residual, c.residual);
    lv.cells.push_back(std::move(c));
  }
  return lv;
}

}  // namespace

AdditiveFn antiderivative_difference(const Polynomial& F) {
  AdditiveFn B;
  B.name = "F(y) - F(x), F = " + F.to_string("x");
  B.exact = [F](const Rational& x, const Rational& y) { return F(y) - F(x); };
  B.declared_rectangular = true;
  return B;
}

AdmissibilityReport admissibility_check(const AdditiveFn& B, const Integrand& f, const Rational& a,
                                        const Rational& b, const Rational& delta, unsigned halvings,
                                        const IntegralOptions& opts) {
  if (!B.exact) throw Error(ErrorCode::invalid_argument, "additive function has no evaluator");
  const CellBounds cb(f, a, b);
  if (!cb.exact_capable())
    throw Error(ErrorCode::unverifiable_bounds, "admissibility needs exact cell bounds");

  AdmissibilityReport rep;
  rep.rectangular = true;
  Rational d = delta;
  for (unsigned k = 0; k <= halvings; ++k, d = d * Rational(1, 2)) {
    const SimplePartition p = build_partition(a, b, d);
    check_additivity(B, p);
    rep.levels.push_back(run_level(B, f, cb, p));
    rep.rectangular = rep.rectangular && rep.levels.back().rectangular;
  }
  rep.residual_halving = true;
  for (std::size_t k = 1; k < rep.levels.size(); ++k) {
    const Rational& prev = rep.levels[k - 1].max_residual;
    const Rational& cur = rep.levels[k].max_residual;
    rep.residual_halving = rep.residual_halving && cur * Rational(2) <= prev;
  }

  rep.total = B.exact(a, b);
  rep.integral = integrate(f, a, b, opts);
  if (rep.integral.exact_value) {
    const Rational diff = (rep.total - *rep.integral.exact_value).abs();
    rep.discrepancy = diff.to_double();
    rep.matches_integral = diff <= *rep.integral.exact_gap;
  } else if (const auto& eb = rep.integral.exact_bounds) {
    rep.discrepancy = std::fabs(rep.total.to_double() - rep.integral.value);
    rep.matches_integral = eb->lower <= rep.total && rep.total <= eb->upper;
  } else {
    rep.discrepancy = std::fabs(rep.total.to_double() - rep.integral.value);
    rep.matches_integral = rep.discrepancy <= rep.integral.gap;
  }
  return rep;
}

}  // namespace hypercalc
