#include "hypercalc/ultrapower.hpp"

#include <algorithm>

namespace hypercalc {

namespace {

constexpr std::uint64_t kRootScanCap = std::uint64_t{1} << 20;

/// Records every natural n of the given parity with E(n) = 0.
void record_zeros(const ExpPoly& e, unsigned parity, std::set<std::uint64_t>& out) {
  if (e.is_zero()) throw Error(ErrorCode::division_by_zero, "division by a sequence that vanishes identically");
  const std::uint64_t cert = e.dominance_certificate();
  for (std::uint64_t n = parity; n < cert; n += 2)
    if (e(n).is_zero()) out.insert(n);
}

void record_polynomial_roots(const Polynomial& g, unsigned parity, std::set<std::uint64_t>& out) {
  if (g.degree() < 1) return;
  // Cauchy bound on the roots of a monic polynomial.
  Rational bound(1);
  const Rational lead = g.leading();
  for (int i = 0; i < g.degree(); ++i) bound = max(bound, Rational(1) + (g.coeff(i) / lead).abs());
  const BigInt top = bound.floor();
  if (top > static_cast<unsigned long>(kRootScanCap))
    throw Error(ErrorCode::unsupported_form, "root bound too large to scan");
  const auto limit = top.get_ui();
  for (std::uint64_t n = parity; n <= limit; n += 2)
    if (g(Rational(static_cast<unsigned long>(n))).is_zero()) out.insert(n);
}

Polynomial common_factor(const ExpQuotient& q) {
  Polynomial g;
  for (const auto& [b, p] : q.num.terms()) g = Polynomial::gcd(g, p);
  for (const auto& [b, p] : q.den.terms()) g = Polynomial::gcd(g, p);
  return g;
}

/// Keeps quotients small: common polynomial factors removed, the dominant
/// denominator base moved to 1 and its leading coefficient scaled to 1.
void reduce(ExpQuotient& q, unsigned parity, std::set<std::uint64_t>& exceptions) {
  if (q.num.is_zero()) {
    record_zeros(q.den, parity, exceptions);
    q.den = ExpPoly::constant(Rational(1));
    return;
  }
  const Polynomial g = common_factor(q);
  if (g.degree() >= 1) {
    record_polynomial_roots(g, parity, exceptions);
    q.num = q.num.divided_by(g);
    q.den = q.den.divided_by(g);
  }
  const Rational base = q.den.dominant().first;
  if (base != Rational(1)) {
    q.num = q.num.rebased(base);
    q.den = q.den.rebased(base);
  }
  const Rational lead = q.den.dominant().second.leading();
  if (lead != Rational(1)) {
    q.num = q.num.scaled(lead.reciprocal());
    q.den = q.den.scaled(lead.reciprocal());
  }
}

struct Classes {
  ExpQuotient q[2];
};

Classes uniform(const ExpPoly& e) {
  Classes c;
  c.q[0].num = e;
  c.q[1].num = e;
  return c;
}

Classes normalize_node(const ExprNode& node, std::set<std::uint64_t>& exc) {
  auto arg = [&](std::size_t i) { return normalize_node(*node.args[i], exc); };
  switch (node.op) {
    case Op::constant: return uniform(ExpPoly::constant(node.value));
    case Op::variable: return uniform(ExpPoly::index());
    case Op::geom: return uniform(ExpPoly::geometric(node.value));
    case Op::altsign: {
      Classes c;
      c.q[0].num = ExpPoly::constant(Rational(1));
      c.q[1].num = ExpPoly::constant(Rational(-1));
      return c;
    }
    case Op::neg: {
      Classes c = arg(0);
      for (auto& q : c.q) q.num = -q.num;
      return c;
    }
    case Op::add:
    case Op::sub: {
      Classes a = arg(0);
      const Classes b = arg(1);
      for (unsigned p = 0; p < 2; ++p) {
        const ExpPoly rhs = node.op == Op::add ? b.q[p].num : -b.q[p].num;
        if (a.q[p].den == b.q[p].den) {
          a.q[p].num += rhs;
        } else {
          a.q[p].num = a.q[p].num * b.q[p].den + rhs * a.q[p].den;
          a.q[p].den = a.q[p].den * b.q[p].den;
        }
        reduce(a.q[p], p, exc);
      }
      return a;
    }
    case Op::mul: {
      Classes a = arg(0);
      const Classes b = arg(1);
      for (unsigned p = 0; p < 2; ++p) {
        a.q[p].num = a.q[p].num * b.q[p].num;
        a.q[p].den = a.q[p].den * b.q[p].den;
        reduce(a.q[p], p, exc);
      }
      return a;
    }
    case Op::div: {
      Classes a = arg(0);
      const Classes b = arg(1);
      for (unsigned p = 0; p < 2; ++p) {
        if (b.q[p].num.is_zero())
          throw Error(ErrorCode::division_by_zero,
                      std::string("division by a sequence that is zero on every ") +
                          (p == 0 ? "even" : "odd") + " index");
        // where the divisor's own denominator vanishes the divisor is undefined
        record_zeros(b.q[p].den, p, exc);
        record_zeros(b.q[p].num, p, exc);
        a.q[p].num = a.q[p].num * b.q[p].den;
        a.q[p].den = a.q[p].den * b.q[p].num;
        reduce(a.q[p], p, exc);
      }
      return a;
    }
    case Op::pow: {
      Classes a = arg(0);
      const long e = node.exponent;
      for (unsigned p = 0; p < 2; ++p) {
        auto& q = a.q[p];
        if (e < 0) {
          if (q.num.is_zero()) throw Error(ErrorCode::division_by_zero, "negative power of the zero sequence");
          record_zeros(q.num, p, exc);
          record_zeros(q.den, p, exc);
          std::swap(q.num, q.den);
        }
        const auto k = static_cast<unsigned>(e < 0 ? -e : e);
        q.num = q.num.pow(k);
        q.den = q.den.pow(k);
        reduce(q, p, exc);
      }
      return a;
    }
    case Op::patch: {
      Classes a = arg(0);
      for (const auto& entry : node.patches) exc.insert(entry.index);
      return a;
    }
    default: break;
  }
  throw Error(ErrorCode::unsupported_form, "primitive not valid in a sequence expression");
}

std::optional<Rational> eval_node(const ExprNode& node, std::uint64_t n) {
  auto arg = [&](std::size_t i) { return eval_node(*node.args[i], n); };
  switch (node.op) {
    case Op::constant: return node.value;
    case Op::variable: return Rational(static_cast<unsigned long>(n));
    case Op::geom: return node.value.pow(static_cast<long>(n));
    case Op::altsign: return Rational(n % 2 == 0 ? 1 : -1);
    case Op::neg: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      auto a = arg(0);
      auto b = arg(1);
      if (!a || !b) return std::nullopt;
      switch (node.op) {
        case Op::add: return *a + *b;
        case Op::sub: return *a - *b;
        case Op::mul: return *a * *b;
        default:
          if (b->is_zero()) return std::nullopt;
          return *a / *b;
      }
    }
    case Op::pow: {
      auto a = arg(0);
      if (!a || (a->is_zero() && node.exponent < 0)) return std::nullopt;
      return a->pow(node.exponent);
    }
    case Op::patch: {
      auto it = std::lower_bound(node.patches.begin(), node.patches.end(), n,
                                 [](const PatchEntry& e, std::uint64_t k) { return e.index < k; });
      if (it != node.patches.end() && it->index == n) return it->value;
      return arg(0);
    }
    default: break;
  }
  throw Error(ErrorCode::unsupported_form, "primitive not valid in a sequence expression");
}

ExprPtr shift_node(const ExprPtr& node) {
  switch (node->op) {
    case Op::constant: return node;
    case Op::variable: return expr::binary(Op::add, node, expr::constant(Rational(1)));
    case Op::geom: return expr::binary(Op::mul, expr::constant(node->value), node);
    case Op::altsign: return expr::unary(Op::neg, node);
    case Op::patch: {
      auto out = std::make_shared<ExprNode>(*node);
      out->args = {shift_node(node->args[0])};
      out->patches.clear();
      for (const auto& e : node->patches)
        if (e.index > 0) out->patches.push_back({e.index - 1, e.value});
      if (out->patches.empty()) return out->args[0];
      return out;
    }
    default: {
      auto out = std::make_shared<ExprNode>(*node);
      for (auto& a : out->args) a = shift_node(a);
      return out;
    }
  }
}

Relation relation_of_sign(int s) {
  return s == 0 ? Relation::equal : (s < 0 ? Relation::less : Relation::greater);
}

/// Eventual relation of a class quotient to zero plus the largest index of
/// that parity where the value is undefined or has a different sign.
std::pair<Relation, std::optional<std::uint64_t>> class_sign(const ExpQuotient& q, unsigned parity) {
  const int eventual = q.eventual_sign();
  std::uint64_t cert = q.den.dominance_certificate();
  if (!q.num.is_zero()) cert = std::max(cert, q.num.dominance_certificate());
  std::optional<std::uint64_t> last_bad;
  for (std::uint64_t n = parity; n < cert; n += 2) {
    const Rational d = q.den(n);
    if (d.is_zero() || q.num(n).sign() * d.sign() != eventual) last_bad = n;
  }
  return {relation_of_sign(eventual), last_bad};
}

}  // namespace

ParityForm normalize(const SeqExpr& s) {
  ParityForm f;
  Classes c = normalize_node(s.root(), f.exceptions);
  for (unsigned p = 0; p < 2; ++p) reduce(c.q[p], p, f.exceptions);
  f.even = std::move(c.q[0]);
  f.odd = std::move(c.q[1]);
  return f;
}

std::optional<Rational> evaluate_at(const SeqExpr& s, std::uint64_t n) { return eval_node(s.root(), n); }

SeqExpr shift_index(const SeqExpr& s) { return SeqExpr(shift_node(s.ptr())); }

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::less: return "less";
    case Relation::greater: return "greater";
    case Relation::ultrafilter_dependent: return "ultrafilter_dependent";
  }
  return "?";
}

FrechetVerdict frechet_compare(const SeqExpr& a, const SeqExpr& b) {
  const ParityForm diff = normalize(a - b);
  FrechetVerdict v;
  std::optional<std::uint64_t> last_bad;
  if (!diff.exceptions.empty()) last_bad = *diff.exceptions.rbegin();
  Relation rel[2];
  for (unsigned p = 0; p < 2; ++p) {
    auto [r, bad] = class_sign(diff.cls(p), p);
    rel[p] = r;
    if (bad) last_bad = std::max(last_bad.value_or(0), *bad);
  }
  v.even = rel[0];
  v.odd = rel[1];
  v.relation = rel[0] == rel[1] ? rel[0] : Relation::ultrafilter_dependent;
  v.exception_bound = last_bad ? *last_bad + 1 : 0;
  return v;
}

std::optional<std::uint64_t> closeness_bound(const SeqExpr& s, const Rational& target,
                                             const Rational& tol) {
  const FrechetVerdict upper = frechet_compare(s, SeqExpr::constant(target + tol));
  const FrechetVerdict lower = frechet_compare(s, SeqExpr::constant(target - tol));
  if (upper.relation != Relation::less || lower.relation != Relation::greater) return std::nullopt;
  return std::max(upper.exception_bound, lower.exception_bound);
}

std::string to_string(const HyperImage& h) {
  return std::visit([](const auto& v) { return v.to_string(); }, h);
}

std::optional<HyperImage> class_image(const ExpQuotient& q) {
  if (!q.den.is_single_term()) return std::nullopt;
  const auto& [dbase, dpoly] = q.den.dominant();
  std::vector<GrowthTerm> terms;
  for (const auto& [base, poly] : q.num.terms())
    terms.push_back({base / dbase, HyperRat(poly, dpoly)});
  HyperExp e = HyperExp::from_terms(std::move(terms));
  if (auto r = e.as_rational()) return HyperImage(*r);
  return HyperImage(e);
}

HyperImage to_hyper(const SeqExpr& s) {
  const ParityForm f = normalize(s);
  const auto even = class_image(f.even);
  if (!f.even.same_value(f.odd)) {
    const auto odd = class_image(f.odd);
    throw UltrafilterDependence(even ? to_string(*even) : f.even.num.to_string(),
                                odd ? to_string(*odd) : f.odd.num.to_string());
  }
  if (!even) throw Error(ErrorCode::unsupported_form, "denominator with several growth terms has no field image");
  return *even;
}

ConvergenceReport analyze(const SeqExpr& s) {
  const ParityForm f = normalize(s);
  ConvergenceReport r;
  r.even_limit = f.even.limit();
  r.odd_limit = f.odd.limit();
  r.limit_points = {r.even_limit, r.odd_limit};
  r.liminf = *r.limit_points.begin();
  r.limsup = *r.limit_points.rbegin();
  r.bounded = r.even_limit.is_finite() && r.odd_limit.is_finite();
  if (r.limit_points.size() == 1) {
    if (r.liminf.is_finite()) r.converges_to = r.liminf.value;
    else r.diverges_to = r.liminf;
  }
  // Cauchy: values at any two infinite indices are infinitely close. Within
  // a class this needs a finite image; across classes the difference of the
  // two class quotients must tend to zero.
  if (r.bounded) {
    ExpQuotient gap{f.even.num * f.odd.den - f.odd.num * f.even.den, f.even.den * f.odd.den};
    const ExtendedValue g = gap.limit();
    r.cauchy = g.is_finite() && g.value.is_zero();
  }
  return r;
}

}  // namespace hypercalc
