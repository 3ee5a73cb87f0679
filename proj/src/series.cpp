#include "hypercalc/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hypercalc {

namespace {

SeqExpr from_polynomial(const Polynomial& p) {
  if (p.is_zero()) return SeqExpr::constant(Rational(0));
  std::optional<SeqExpr> out;
  for (int j = p.degree(); j >= 0; --j) {
    const Rational c = p.coeff(static_cast<std::size_t>(j));
    if (c.is_zero()) continue;
    std::optional<SeqExpr> mono;
    if (j == 1) mono = SeqExpr::n();
    else if (j > 1) mono = pow(SeqExpr::n(), j);
    const Rational mag = out ? c.abs() : c;
    SeqExpr t = !mono ? SeqExpr::constant(mag)
                      : (mag == Rational(1) ? *mono : SeqExpr::constant(mag) * *mono);
    if (!out) out = t;
    else out = c.sign() < 0 ? *out - t : *out + t;
  }
  return *out;
}

/// s^n for a signed rational s.
std::optional<SeqExpr> signed_power(const Rational& s) {
  const Rational mag = s.abs();
  std::optional<SeqExpr> f;
  if (mag != Rational(1)) f = SeqExpr::geom(mag);
  if (s.sign() < 0) f = f ? SeqExpr::altsign() * *f : SeqExpr::altsign();
  return f;
}

/// Polynomial R with s*R(k+1) - R(k) = q(k), for s != 1.
Polynomial geometric_antidifference(const Polynomial& q, const Rational& s) {
  const int d = q.degree();
  std::vector<Rational> rho(static_cast<std::size_t>(d + 1));
  for (int m = d; m >= 0; --m) {
    Rational acc = q.coeff(static_cast<std::size_t>(m));
    for (int j = m + 1; j <= d; ++j)
      acc -= s * rho[static_cast<std::size_t>(j)] *
             Rational(binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(m)));
    rho[static_cast<std::size_t>(m)] = acc / (s - Rational(1));
  }
  return Polynomial(rho);
}

/// Exact partial sums of the pointwise terms for indices 0..last.
std::vector<Rational> direct_partial_sums(const SeqExpr& term, std::uint64_t last) {
  std::vector<Rational> out;
  Rational acc(0);
  for (std::uint64_t k = 0; k <= last; ++k) {
    auto v = evaluate_at(term, k);
    if (!v) throw Error(ErrorCode::domain, "term undefined at index " + std::to_string(k));
    acc += *v;
    out.push_back(acc);
  }
  return out;
}

SeqExpr exp_poly_partial_sum(const SeqExpr& term) {
  const ParityForm f = normalize(term);
  const ExpPoly one = ExpPoly::constant(Rational(1));
  if (!(f.even.den == one) || !(f.odd.den == one))
    throw Error(ErrorCode::no_closed_form, "term is not an exponential polynomial");

  // Signed bases: a_k = sum_r r^k A_r(k) + (-r)^k B_r(k).
  std::map<Rational, Polynomial> signed_terms;
  const Rational half(1, 2);
  std::map<Rational, std::pair<Polynomial, Polynomial>> by_base;
  for (const auto& [b, p] : f.even.num.terms()) by_base[b].first = p;
  for (const auto& [b, p] : f.odd.num.terms()) by_base[b].second = p;
  for (const auto& [b, pe_po] : by_base) {
    const auto& [pe, po] = pe_po;
    const Polynomial plus = (pe + po) * half;
    const Polynomial minus = (pe - po) * half;
    if (!plus.is_zero()) signed_terms[b] += plus;
    if (!minus.is_zero()) signed_terms[-b] += minus;
  }

  // sum_{k<=n} s^k q(k): prefix sum for s = 1, else s * s^n * R(n+1) - R(0).
  std::map<Rational, Polynomial> result;
  Rational constant(0);
  const Polynomial next{Rational(1), Rational(1)};
  for (const auto& [s, q] : signed_terms) {
    if (s == Rational(1)) {
      result[s] += prefix_sum(q);
      continue;
    }
    const Polynomial r = geometric_antidifference(q, s);
    result[s] += r.compose(next) * s;
    constant -= r(Rational(0));
  }
  result[Rational(1)] += Polynomial::constant(constant);

  // Correct for indices where the pointwise term differs from its form.
  std::uint64_t first_regular = 0;
  if (!f.exceptions.empty()) first_regular = *f.exceptions.rbegin() + 1;
  std::vector<PatchEntry> early;
  if (first_regular > 0) {
    const auto exact = direct_partial_sums(term, first_regular - 1);
    Rational form_sum(0);
    for (std::uint64_t k = 0; k < first_regular; ++k) form_sum += f.cls(k % 2)(k);
    result[Rational(1)] += Polynomial::constant(exact.back() - form_sum);
    for (std::uint64_t k = 0; k + 1 < first_regular; ++k) early.push_back({k, exact[k]});
  }

  std::optional<SeqExpr> out;
  for (const auto& [s, p] : result) {
    if (p.is_zero()) continue;
    const auto g = signed_power(s);
    SeqExpr piece = from_polynomial(p);
    if (g) piece = p == Polynomial::constant(Rational(1)) ? *g : *g * piece;
    out = out ? *out + piece : piece;
  }
  SeqExpr sum = out ? *out : SeqExpr::constant(Rational(0));
  if (!early.empty()) {
    // drop entries that already agree with the closed form
    std::vector<PatchEntry> needed;
    for (const auto& e : early)
      if (evaluate_at(sum, e.index) != e.value) needed.push_back(e);
    if (!needed.empty()) sum = SeqExpr::patch(std::move(needed), sum);
  }
  return sum;
}

SeqExpr telescoped_partial_sum(const SeqExpr& term, const SeqExpr& g) {
  const SeqExpr shifted = shift_index(g);
  const ParityForm diff = normalize(term - (shifted - g));
  if (!diff.even.num.is_zero() || !diff.odd.num.is_zero())
    throw Error(ErrorCode::no_closed_form, "antidifference does not telescope to the term");
  std::uint64_t checked = diff.exceptions.empty() ? 0 : *diff.exceptions.rbegin() + 1;
  for (std::uint64_t k = 0; k < checked; ++k) {
    auto t = evaluate_at(term, k);
    auto lo = evaluate_at(g, k);
    auto hi = evaluate_at(g, k + 1);
    if (!t || !lo || !hi || *t != *hi - *lo)
      throw Error(ErrorCode::no_closed_form,
                  "antidifference does not match the term at index " + std::to_string(k));
  }
  auto g0 = evaluate_at(g, 0);
  if (!g0) throw Error(ErrorCode::domain, "antidifference undefined at index 0");
  return shifted - SeqExpr::constant(*g0);
}

ExprPtr dyadic_node(const ExprPtr& node) {
  switch (node->op) {
    case Op::constant: return node;
    case Op::variable: return SeqExpr::geom(Rational(2)).ptr();
    case Op::altsign: return expr::constant(Rational(1));
    case Op::geom:
      throw Error(ErrorCode::unsupported_form, "geometric factors have no dyadic condensation");
    case Op::patch: return dyadic_node(node->args[0]);
    default: {
      auto out = std::make_shared<ExprNode>(*node);
      for (auto& a : out->args) a = dyadic_node(a);
      return out;
    }
  }
}

bool dominant_convergence(const ParityForm& f) {
  for (unsigned p = 0; p < 2; ++p) {
    const auto [ratio, excess] = f.cls(p).growth();
    if (f.cls(p).num.is_zero()) continue;
    if (!(ratio < Rational(1) || (ratio == Rational(1) && excess <= -2))) return false;
  }
  return true;
}

SeriesReport fallback_analysis(const SeqExpr& term) {
  SeriesReport rep;
  const ConvergenceReport t = analyze(term);
  if (!t.converges_to || !t.converges_to->is_zero()) {
    rep.verdict = SeriesVerdict::diverges;
    rep.method = "term_test";
    const ExtendedValue zero = ExtendedValue::finite(Rational(0));
    if (zero < t.liminf) rep.diverges_to = ExtendedValue::infinity(1);
    else if (t.limsup < zero) rep.diverges_to = ExtendedValue::infinity(-1);
    return rep;
  }

  const FrechetVerdict sign = frechet_compare(term, SeqExpr::constant(Rational(0)));
  const bool one_signed = sign.decisive();
  const int orientation = sign.relation == Relation::less ? -1 : 1;
  const SeqExpr magnitude = orientation < 0 ? -term : term;

  if (one_signed) {
    const FrechetVerdict step = frechet_compare(shift_index(magnitude), magnitude);
    const bool nonincreasing = step.relation == Relation::less || step.relation == Relation::equal;
    if (nonincreasing) {
      try {
        const SeqExpr c = dyadic_condensation(magnitude);
        const ConvergenceReport cr = analyze(c);
        const ExtendedValue zero = ExtendedValue::finite(Rational(0));
        if (zero < cr.liminf) {
          rep.verdict = SeriesVerdict::diverges;
          rep.diverges_to = ExtendedValue::infinity(orientation);
          rep.method = "dyadic_blocks";
          // block over (2^n, 2^{n+1}] is at least 2^n a(2^{n+1}) = c(n+1)/2
          if (cr.liminf.is_finite()) rep.block_floor = cr.liminf.value * Rational(1, 2);
          return rep;
        }
        const ParityForm cf = normalize(c);
        const auto [ratio, excess] = cf.even.growth();
        if (ratio < Rational(1)) {
          rep.verdict = SeriesVerdict::converges;
          rep.method = "dyadic_blocks";
          rep.block_ratio = ratio;
          return rep;
        }
      } catch (const Error&) {
        // not condensable; try dominance below
      }
    }
  }

  const ParityForm f = normalize(term);
  if (dominant_convergence(f)) {
    rep.verdict = SeriesVerdict::converges;
    rep.method = "dominance";
    return rep;
  }
  if (one_signed) {
    bool harmonic_like = true;
    for (unsigned p = 0; p < 2; ++p) {
      const auto [ratio, excess] = f.cls(p).growth();
      harmonic_like = harmonic_like && ratio == Rational(1) && excess == -1;
    }
    if (harmonic_like) {
      rep.verdict = SeriesVerdict::diverges;
      rep.diverges_to = ExtendedValue::infinity(orientation);
      rep.method = "dominance";
    }
  }
  return rep;
}

bool absolutely_convergent(const SeqExpr& a) {
  const ParityForm f = normalize(a);
  if (dominant_convergence(f)) return true;
  if (!frechet_compare(a, SeqExpr::constant(Rational(0))).decisive()) return false;
  return series_analyze(a).verdict == SeriesVerdict::converges;
}

}  // namespace

SeqExpr series_partial_sum(const SeqExpr& term, const std::optional<SeqExpr>& antidifference) {
  if (antidifference) return telescoped_partial_sum(term, *antidifference);
  return exp_poly_partial_sum(term);
}

std::string_view to_string(SeriesVerdict v) noexcept {
  switch (v) {
    case SeriesVerdict::converges: return "converges";
    case SeriesVerdict::diverges: return "diverges";
    case SeriesVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

SeqExpr dyadic_condensation(const SeqExpr& term) {
  return SeqExpr::geom(Rational(2)) * SeqExpr(dyadic_node(term.ptr()));
}

SeriesReport series_analyze(const SeqExpr& term, const std::optional<SeqExpr>& antidifference) {
  std::optional<SeqExpr> sum;
  try {
    sum = series_partial_sum(term, antidifference);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_closed_form && e.code() != ErrorCode::unsupported_form) throw;
  }
  if (sum) {
    try {
      const ConvergenceReport r = analyze(*sum);
      SeriesReport rep;
      rep.method = "closed_form";
      rep.partial_sum = sum;
      if (r.converges_to) {
        rep.verdict = SeriesVerdict::converges;
        rep.value = r.converges_to;
      } else {
        rep.verdict = SeriesVerdict::diverges;
        rep.diverges_to = r.diverges_to;
      }
      return rep;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unsupported_form) throw;
    }
  }
  try {
    return fallback_analysis(term);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_form) throw;
    return SeriesReport{};
  }
}

CauchyProductReport cauchy_product_check(const SeqExpr& a, const SeqExpr& b, std::uint64_t n) {
  const SeriesReport ra = series_analyze(a);
  const SeriesReport rb = series_analyze(b);
  if (!ra.value || !rb.value) throw Error(ErrorCode::unknown_sum, "both series need an exactly known sum");
  if (!absolutely_convergent(a))
    throw Error(ErrorCode::invalid_argument, "first series is not known to converge absolutely");

  std::vector<Rational> av, bv;
  for (std::uint64_t k = 0; k <= n; ++k) {
    auto x = evaluate_at(a, k);
    auto y = evaluate_at(b, k);
    if (!x || !y) throw Error(ErrorCode::domain, "term undefined at index " + std::to_string(k));
    av.push_back(*x);
    bv.push_back(*y);
  }
  CauchyProductReport rep;
  rep.sum_a = *ra.value;
  rep.sum_b = *rb.value;
  rep.target = rep.sum_a * rep.sum_b;
  Rational partial(0);
  std::uint64_t next_report = 1;
  for (std::uint64_t k = 0; k <= n; ++k) {
    Rational c(0);
    for (std::uint64_t j = 0; j <= k; ++j) c += av[j] * bv[k - j];
    partial += c;
    if (k + 1 == next_report || k == n) {
      rep.trend.emplace_back(k, (partial - rep.target).abs().to_double());
      if (k + 1 == next_report) next_report *= 2;
    }
  }
  rep.partial = partial;
  rep.error = (partial - rep.target).abs().to_double();
  rep.nonincreasing = true;
  for (std::size_t i = 1; i < rep.trend.size(); ++i)
    rep.nonincreasing = rep.nonincreasing && rep.trend[i].second <= rep.trend[i - 1].second;
  return rep;
}

}  // namespace hypercalc
