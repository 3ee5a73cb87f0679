#include "hypercalc/integral.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hypercalc/cell_kernels.hpp"
#include "hypercalc/error.hpp"
#include "hypercalc/expr_eval.hpp"

namespace hypercalc {

double SimplePartition::point_double(std::uint64_t k) const {
  if (k > n) return b.to_double();
  return a.to_double() + static_cast<double>(k) * delta.to_double();
}

SimplePartition build_partition(const Rational& a, const Rational& b, const Rational& delta) {
  if (!(a < b)) throw Error(ErrorCode::bad_interval, "partition needs a < b");
  if (delta.sign() <= 0) throw Error(ErrorCode::bad_interval, "partition step must be positive");
  const BigInt n = ((b - a) / delta).floor();
  if (!n.fits_ulong_p()) throw Error(ErrorCode::depth_cap, "partition has too many cells");
  return {a, b, delta, n.get_ui()};
}

// ---------------------------------------------------------------- integrand

Integrand Integrand::from_expr(const FuncExpr& f) {
  Integrand g;
  g.name_ = f.to_string();
  g.poly_ = f.as_polynomial();
  g.kind_ = g.poly_ ? IntegrandKind::polynomial : IntegrandKind::general;
  if (f.is_rational_only()) g.exact_ = [f](const Rational& x) { return evaluate_exact(f, x); };
  g.approx_ = [f](double x) { return evaluate_float(f, x); };
  return g;
}

Integrand Integrand::monotone(const FuncExpr& f, Direction dir) {
  Integrand g = from_expr(f);
  g.kind_ = IntegrandKind::monotone;
  g.dir_ = dir;
  return g;
}

Integrand Integrand::custom(std::string name, ExactFn exact, FloatFn approx, IntegrandKind kind,
                            Direction dir) {
  if (kind == IntegrandKind::polynomial)
    throw Error(ErrorCode::invalid_argument, "polynomial integrands are built from expressions");
  Integrand g;
  g.name_ = std::move(name);
  g.exact_ = std::move(exact);
  g.approx_ = std::move(approx);
  if (!g.approx_ && g.exact_) {
    auto ex = g.exact_;
    g.approx_ = [ex](double x) { return ex(Rational::from_double(x)).to_double(); };
  }
  g.kind_ = kind;
  g.dir_ = dir;
  return g;
}

Integrand Integrand::with_patches(std::vector<PointPatch> patches) const {
  Integrand g = *this;
  std::set<Rational> seen;
  for (const auto& p : patches)
    if (!seen.insert(p.x).second) throw Error(ErrorCode::invalid_argument, "duplicate patch point");
  g.patches_ = std::move(patches);
  return g;
}

Rational Integrand::base_exact(const Rational& x) const {
  if (!exact_) throw Error(ErrorCode::unsupported_form, "integrand has no exact evaluator");
  return exact_(x);
}

Rational Integrand::value_exact(const Rational& x) const {
  for (const auto& p : patches_)
    if (p.x == x) return p.value;
  return base_exact(x);
}

double Integrand::value_float(double x) const {
  for (const auto& p : patches_)
    if (p.x.to_double() == x) return p.value.to_double();
  return approx_(x);
}

// -------------------------------------------------------------- cell bounds

namespace {

constexpr unsigned kGridBits = 10;
constexpr unsigned kBracketBits = 40;
constexpr int kInteriorSamples = 3;

double checked(double v, double x) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::unbounded_sample, "integrand is not finite near x = " + std::to_string(x));
  return v;
}

}  // namespace

CellBounds::CellBounds(const Integrand& f, const Rational& a, const Rational& b) : f_(f) {
  exact_ok_ = f.has_exact() && f.kind() != IntegrandKind::general;
  if (f.kind() != IntegrandKind::polynomial || !(a < b)) return;
  const Polynomial& p = *f.polynomial();
  const Polynomial dp = p.derivative();
  slope_bound_ = dp.magnitude_bound(max(a.abs(), b.abs()));
  if (dp.degree() < 1) return;  // f' constant: f monotone

  const Rational step = (b - a) / Rational(1L << kGridBits);
  const Rational target = step / Rational(1L << (kBracketBits - kGridBits));
  Rational prev_x = a;
  int prev_s = dp(a).sign();
  if (prev_s == 0) brackets_.push_back({a, a});
  for (long k = 1; k <= (1L << kGridBits); ++k) {
    const Rational x = a + step * Rational(k);
    const int s = dp(x).sign();
    if (s == 0) {
      brackets_.push_back({x, x});
    } else if (prev_s != 0 && s != prev_s) {
      Rational lo = prev_x, hi = x;
      while (hi - lo > target) {
        const Rational mid = (lo + hi) * Rational(1, 2);
        const int ms = dp(mid).sign();
        if (ms == 0) {
          lo = hi = mid;
          break;
        }
        (ms == prev_s ? lo : hi) = mid;
      }
      brackets_.push_back({lo, hi});
    }
    prev_x = x;
    prev_s = s;
  }
}

std::pair<Rational, Rational> CellBounds::exact(const Rational& l, const Rational& r) const {
  const Rational fl = f_.base_exact(l);
  const Rational fr = f_.base_exact(r);
  if (f_.kind() == IntegrandKind::monotone) {
    const bool up = f_.direction() == Direction::increasing;
    if (up ? fr < fl : fl < fr)
      throw Error(ErrorCode::invalid_argument,
                  "monotone assertion fails on [" + l.to_string() + ", " + r.to_string() + "]");
    return up ? std::pair{fl, fr} : std::pair{fr, fl};
  }
  Rational m = min(fl, fr), M = max(fl, fr);
  for (const auto& br : brackets_) {
    if (br.hi < l || r < br.lo) continue;
    // whole-bracket bound, independent of the cell, so refinement never loosens it
    const Rational v = f_.base_exact(br.lo);
    const Rational slack = (br.hi - br.lo) * slope_bound_;
    m = min(m, v - slack);
    M = max(M, v + slack);
  }
  return {m, M};
}

std::pair<double, double> CellBounds::approx(double l, double r) const {
  const double fl = checked(f_.base_float(l), l);
  const double fr = checked(f_.base_float(r), r);
  switch (f_.kind()) {
    case IntegrandKind::monotone: {
      const bool up = f_.direction() == Direction::increasing;
      if (up ? fr < fl : fl < fr)
        throw Error(ErrorCode::invalid_argument,
                    "monotone assertion fails on [" + std::to_string(l) + ", " + std::to_string(r) + "]");
      return up ? std::pair{fl, fr} : std::pair{fr, fl};
    }
    case IntegrandKind::polynomial: {
      double m = std::min(fl, fr), M = std::max(fl, fr);
      const double B = slope_bound_.to_double();
      for (const auto& br : brackets_) {
        const double blo = br.lo.to_double(), bhi = br.hi.to_double();
        if (bhi < l || r < blo) continue;
        const double v = f_.base_float(blo);
        m = std::min(m, v - (bhi - blo) * B);
        M = std::max(M, v + (bhi - blo) * B);
      }
      return {m, M};
    }
    case IntegrandKind::general: break;
  }
  double m = std::min(fl, fr), M = std::max(fl, fr);
  for (int k = 1; k <= kInteriorSamples; ++k) {
    const double x = l + (r - l) * k / (kInteriorSamples + 1);
    const double v = checked(f_.base_float(x), x);
    m = std::min(m, v);
    M = std::max(M, v);
  }
  return {m, M};
}

std::pair<Rational, Rational> CellBounds::exact_patched(const Rational& l, const Rational& r) const {
  auto [m, M] = exact(l, r);
  for (const auto& p : f_.patches()) {
    if (p.x < l || r < p.x) continue;
    m = min(m, p.value);
    M = max(M, p.value);
  }
  return {m, M};
}

std::pair<double, double> CellBounds::approx_patched(double l, double r) const {
  auto [m, M] = approx(l, r);
  for (const auto& p : f_.patches()) {
    const double x = p.x.to_double();
    if (x < l || r < x) continue;
    m = std::min(m, p.value.to_double());
    M = std::max(M, p.value.to_double());
  }
  return {m, M};
}

// ---------------------------------------------------------------- sums

namespace {

LowerUpper sums_with(const CellBounds& cb, const SimplePartition& p, Execution exec, bool exact) {
  LowerUpper out;
  out.cells = p.cells();
  out.sampled = cb.sampled();
  if (exact) {
    const kernels::CellFn<Rational> fn = [&](std::uint64_t i) {
      return cb.exact_patched(p.point(i), p.point(i + 1));
    };
    const Sums<Rational> s = kernels::sum_cells(p, fn, exec);
    out.exact = s;
    out.approx = {s.lower.to_double(), s.upper.to_double()};
  } else {
    const kernels::CellFn<double> fn = [&](std::uint64_t i) {
      return cb.approx_patched(p.point_double(i), p.point_double(i + 1));
    };
    out.approx = kernels::sum_cells(p, fn, exec);
  }
  return out;
}

}  // namespace

LowerUpper lower_upper_sums(const Integrand& f, const SimplePartition& p, Execution exec, ExactPolicy policy) {
  const CellBounds cb(f, p.a, p.b);
  if (policy == ExactPolicy::require && !cb.exact_capable())
    throw Error(ErrorCode::unverifiable_bounds, "no exact cell bounds for this integrand class");
  return sums_with(cb, p, exec, policy != ExactPolicy::never && cb.exact_capable());
}

// ------------------------------------------------------------ symbolic path

SymbolicIntegral symbolic_integral_polynomial(const Polynomial& f, const Rational& a, const Rational& b,
                                              unsigned long scale) {
  if (scale == 0) throw Error(ErrorCode::invalid_argument, "scale must be positive");
  SymbolicIntegral out;
  out.slope_bound = f.derivative().magnitude_bound(max(a.abs(), b.abs()));
  if (a == b) {
    out.value = Rational(0);
    out.left_sum = HyperRat(0);
    out.certificate = "empty interval";
    return out;
  }
  // dx = (b - a)/L with L = scale*W; sum_{k<L} f(a + k dx) dx expanded in powers of k.
  const HyperRat dx = HyperRat(b - a) / (HyperRat(Rational(scale)) * HyperRat::omega());
  const Polynomial last_index{Rational(-1), Rational(scale)};  // L - 1 as a polynomial in W
  const int d = f.degree();
  HyperRat sum(0);
  HyperRat dx_power(1);
  for (int m = 0; m <= d; ++m) {
    Rational coef(0);
    for (int j = m; j <= d; ++j)
      coef += f.coeff(static_cast<std::size_t>(j)) *
              Rational(binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(m))) *
              a.pow(j - m);
    if (!coef.is_zero()) {
      const Polynomial power_sum =
          prefix_sum(Polynomial::monomial(Rational(1), static_cast<std::size_t>(m))).compose(last_index);
      sum += HyperRat(coef) * dx_power * HyperRat(power_sum, Polynomial::constant(Rational(1)));
    }
    dx_power *= dx;
  }
  out.left_sum = sum * dx;
  out.value = standard_part(out.left_sum);
  out.certificate = "left sum over dx = (" + (b - a).to_string() + ")/(" +
                    (scale == 1 ? std::string("W") : std::to_string(scale) + "*W") +
                    "); |U - L| <= " + out.slope_bound.to_string() + " * " + (b - a).abs().to_string() +
                    " * dx, infinitesimal";
  return out;
}

std::string_view to_string(IntegralTag t) noexcept {
  switch (t) {
    case IntegralTag::exact: return "exact";
    case IntegralTag::certified: return "certified";
    case IntegralTag::sampled: return "sampled";
  }
  return "?";
}

namespace {

double tolerance_for(double tol, double magnitude) { return tol * std::max(1.0, std::fabs(magnitude)); }

IntegralResult integrate_monotone(const Integrand& f, const Rational& a, const Rational& b,
                                  const IntegralOptions& opts) {
  const CellBounds cb(f, a, b);
  const bool exact = cb.exact_capable();
  const double fa = exact ? f.base_exact(a).to_double() : f.base_float(a.to_double());
  const double fb = exact ? f.base_exact(b).to_double() : f.base_float(b.to_double());
  const double spread = std::fabs(fb - fa);
  const double width = (b - a).to_double();
  // |integral| >= min(|f(a)|, |f(b)|) * width when f keeps one sign
  const double floor_magnitude = fa * fb > 0 ? std::min(std::fabs(fa), std::fabs(fb)) * width : 0.0;
  const double target = tolerance_for(opts.tol, floor_magnitude);
  double needed = spread == 0 ? 1.0 : std::ceil(width * spread / target);
  if (needed > static_cast<double>(opts.max_cells))
    throw Error(ErrorCode::depth_cap, "monotone gap needs " + std::to_string(needed) + " cells");
  const auto cells = static_cast<unsigned long>(needed);
  const SimplePartition p = build_partition(a, b, (b - a) / Rational(cells));
  const LowerUpper s = sums_with(cb, p, opts.exec, exact);
  IntegralResult r;
  r.mode = "monotone";
  r.tag = IntegralTag::certified;
  r.cells = cells;
  r.value = 0.5 * (s.approx.lower + s.approx.upper);
  r.gap = s.approx.upper - s.approx.lower;
  if (s.exact) {
    r.exact_bounds = s.exact;
    r.exact_gap = s.exact->upper - s.exact->lower;
    r.value = ((s.exact->lower + s.exact->upper) * Rational(1, 2)).to_double();
  }
  r.certificate = "monotone: U - L = dx * |f(b) - f(a)| with dx = " + p.delta.to_string();
  return r;
}

IntegralResult integrate_refine(const Integrand& f, const Rational& a, const Rational& b,
                                const IntegralOptions& opts) {
  const CellBounds cb(f, a, b);
  std::uint64_t cells = 1024;
  double last_gap = 0;
  while (cells <= opts.max_cells) {
    const SimplePartition p = build_partition(a, b, (b - a) / Rational(static_cast<unsigned long>(cells)));
    const LowerUpper s = sums_with(cb, p, opts.exec, false);
    const double mid = 0.5 * (s.approx.lower + s.approx.upper);
    last_gap = s.approx.upper - s.approx.lower;
    if (last_gap <= tolerance_for(opts.tol, mid)) {
      IntegralResult r;
      r.mode = "refine";
      r.tag = cb.sampled() ? IntegralTag::sampled : IntegralTag::certified;
      r.cells = cells;
      r.value = mid;
      r.gap = last_gap;
      r.certificate = cb.sampled() ? "sampled cell bounds: U - L = " + std::to_string(last_gap)
                                   : "cell bounds: U - L = " + std::to_string(last_gap);
      return r;
    }
    cells *= 2;
  }
  throw Error(ErrorCode::depth_cap, "cell cap reached with gap " + std::to_string(last_gap));
}

}  // namespace

IntegralResult integrate(const Integrand& f, const Rational& a, const Rational& b, const IntegralOptions& opts) {
  if (a == b) {
    IntegralResult r;
    r.exact_value = Rational(0);
    r.exact_gap = Rational(0);
    r.mode = "symbolic";
    r.certificate = "empty interval";
    return r;
  }
  if (b < a) {
    IntegralResult r = integrate(f, b, a, opts);
    r.value = -r.value;
    if (r.exact_value) r.exact_value = -*r.exact_value;
    if (r.exact_bounds) r.exact_bounds = Sums<Rational>{-r.exact_bounds->upper, -r.exact_bounds->lower};
    return r;
  }
  IntegralResult r;
  if (f.kind() == IntegrandKind::polynomial && opts.symbolic) {
    const SymbolicIntegral s = symbolic_integral_polynomial(*f.polynomial(), a, b);
    r.exact_value = s.value;
    r.exact_gap = Rational(0);
    r.value = s.value.to_double();
    r.mode = "symbolic";
    r.tag = IntegralTag::exact;
    r.certificate = s.certificate;
  } else if (f.kind() == IntegrandKind::monotone) {
    r = integrate_monotone(f, a, b, opts);
  } else {
    r = integrate_refine(f, a, b, opts);
  }
  if (!f.patches().empty())
    r.certificate += "; " + std::to_string(f.patches().size()) +
                     " modified point(s) leave the integral unchanged";
  return r;
}

// ------------------------------------------------------------- accumulation

AccumulationReport accumulation_check(const Integrand& f, const Rational& a, const Rational& b,
                                      std::vector<Rational> grid, double tol, const IntegralOptions& opts) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (const auto& y : grid)
    if (y < a || b < y) throw Error(ErrorCode::bad_interval, "grid point outside the interval");

  AccumulationReport rep;
  for (const auto& y : grid) rep.points.push_back({y, integrate(f, a, y, opts), std::nullopt});

  rep.additive = true;
  rep.exact_additivity = true;
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    const auto& lo = rep.points[i];
    const auto& hi = rep.points[i + 1];
    const IntegralResult piece = integrate(f, lo.y, hi.y, opts);
    if (lo.value.exact_value && hi.value.exact_value && piece.exact_value && piece.tag == IntegralTag::exact &&
        lo.value.tag == IntegralTag::exact && hi.value.tag == IntegralTag::exact) {
      const bool eq = *lo.value.exact_value + *piece.exact_value == *hi.value.exact_value;
      rep.additive = rep.additive && eq;
      rep.exact_additivity = rep.exact_additivity && eq;
    } else {
      rep.exact_additivity = false;
      const double slack = lo.value.gap + piece.gap + hi.value.gap + 1e-12;
      rep.additive = rep.additive && std::fabs(lo.value.value + piece.value - hi.value.value) <= slack;
    }
  }

  auto is_patched = [&](const Rational& y) {
    return std::any_of(f.patches().begin(), f.patches().end(), [&](const PointPatch& p) { return p.x == y; });
  };
  for (std::size_t i = 1; i + 1 < rep.points.size(); ++i) {
    auto& pt = rep.points[i];
    if (is_patched(pt.y)) continue;
    const auto& l = rep.points[i - 1];
    const auto& r = rep.points[i + 1];
    double residual;
    if (l.value.exact_value && r.value.exact_value && f.has_exact()) {
      const Rational q = (*r.value.exact_value - *l.value.exact_value) / (r.y - l.y);
      residual = (q - f.base_exact(pt.y)).abs().to_double();
    } else {
      const double q = (r.value.value - l.value.value) / (r.y - l.y).to_double();
      residual = std::fabs(q - f.base_float(pt.y.to_double()));
    }
    pt.residual = residual;
    rep.max_residual = std::max(rep.max_residual, residual);
  }
  rep.within_tol = rep.max_residual <= tol;
  return rep;
}

// ---------------------------------------------------- finite modification

ModificationReport finite_modification_check(const Integrand& f, const std::vector<PointPatch>& points,
                                             const Rational& a, const Rational& b, double tol,
                                             const IntegralOptions& opts) {
  if (!(a < b)) throw Error(ErrorCode::bad_interval, "need a < b");
  for (const auto& p : points)
    if (p.x < a || b < p.x) throw Error(ErrorCode::bad_interval, "modified point outside the interval");
  const Integrand base = f.with_patches({});
  const Integrand g = f.with_patches(points);
  const CellBounds cf(base, a, b);
  const CellBounds cg(g, a, b);

  ModificationReport rep;
  rep.integral_f = integrate(base, a, b, opts).value;
  if (points.empty()) {
    rep.integral_g = rep.integral_f;
    rep.bound_respected = true;
    rep.within_tol = true;
    return rep;
  }

  // Oscillation bound: distance of each new value from the range of f.
  double inf_f = INFINITY, sup_f = -INFINITY;
  {
    const SimplePartition coarse = build_partition(a, b, (b - a) / Rational(1024));
    for (std::uint64_t i = 0; i < coarse.cells(); ++i) {
      if (coarse.width(i).is_zero()) continue;
      const auto [m, M] = cf.approx(coarse.point_double(i), coarse.point_double(i + 1));
      inf_f = std::min(inf_f, m);
      sup_f = std::max(sup_f, M);
    }
  }
  double osc = 0;
  for (const auto& p : points) {
    const double v = p.value.to_double();
    osc = std::max({osc, std::fabs(v - inf_f), std::fabs(v - sup_f)});
  }

  const bool exact = cf.exact_capable();
  double diff_last = 0;
  rep.bound_respected = true;
  for (unsigned level = 2; level < 62; ++level) {
    const Rational delta = (b - a) / Rational(1ul << level);
    const SimplePartition p = build_partition(a, b, delta);
    std::set<std::uint64_t> touched;
    for (const auto& pt : points) {
      const std::uint64_t k = std::min<std::uint64_t>(((pt.x - a) / delta).floor().get_ui(), p.n);
      touched.insert(k);
      if (k > 0 && p.point(k) == pt.x) touched.insert(k - 1);
    }
    double dl = 0, du = 0;
    for (std::uint64_t i : touched) {
      const Rational w = p.width(i);
      if (w.is_zero()) continue;
      if (exact) {
        const auto [mf, Mf] = cf.exact(p.point(i), p.point(i + 1));
        const auto [mg, Mg] = cg.exact_patched(p.point(i), p.point(i + 1));
        dl += ((mg - mf) * w).to_double();
        du += ((Mg - Mf) * w).to_double();
      } else {
        const auto [mf, Mf] = cf.approx(p.point_double(i), p.point_double(i + 1));
        const auto [mg, Mg] = cg.approx_patched(p.point_double(i), p.point_double(i + 1));
        dl += (mg - mf) * w.to_double();
        du += (Mg - Mf) * w.to_double();
      }
    }
    ModificationLevel lv{delta, std::fabs(dl), std::fabs(du),
                         2.0 * static_cast<double>(points.size()) * osc * delta.to_double()};
    rep.bound_respected = rep.bound_respected && lv.lower_diff <= lv.bound * (1 + 1e-12) &&
                          lv.upper_diff <= lv.bound * (1 + 1e-12);
    rep.levels.push_back(lv);
    diff_last = std::max(lv.lower_diff, lv.upper_diff);
    if (lv.bound <= 0.5 * tol) break;
  }
  rep.integral_g = rep.integral_f + diff_last;
  rep.within_tol = std::fabs(rep.integral_g - rep.integral_f) <= tol;
  return rep;
}

}  // namespace hypercalc
