#include "hypercalc/exp_poly.hpp"

#include <algorithm>

#include "hypercalc/error.hpp"

namespace hypercalc {

ExpPoly ExpPoly::constant(const Rational& c) { return term(Rational(1), Polynomial::constant(c)); }

ExpPoly ExpPoly::index() { return term(Rational(1), Polynomial::variable()); }

ExpPoly ExpPoly::geometric(const Rational& base) {
  return term(base, Polynomial::constant(Rational(1)));
}

ExpPoly ExpPoly::term(const Rational& base, const Polynomial& p) {
  if (base.sign() <= 0) throw Error(ErrorCode::invalid_argument, "geometric base must be positive");
  ExpPoly e;
  e.add_term(base, p);
  return e;
}

void ExpPoly::add_term(const Rational& base, const Polynomial& p) {
  if (p.is_zero()) return;
  auto it = terms_.find(base);
  if (it == terms_.end()) {
    terms_.emplace(base, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

int ExpPoly::max_degree() const {
  int d = -1;
  for (const auto& [b, p] : terms_) d = std::max(d, p.degree());
  return d;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly out;
  for (const auto& [b, p] : terms_) out.terms_.emplace(b, -p);
  return out;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [b, p] : o.terms_) add_term(b, p);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  for (const auto& [b, p] : o.terms_) add_term(b, -p);
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ra, pa] : a.terms_)
    for (const auto& [rb, pb] : b.terms_) out.add_term(ra * rb, pa * pb);
  return out;
}

ExpPoly ExpPoly::scaled(const Rational& s) const {
  if (s.is_zero()) return {};
  ExpPoly out;
  for (const auto& [b, p] : terms_) out.terms_.emplace(b, p * s);
  return out;
}

ExpPoly ExpPoly::rebased(const Rational& r) const {
  ExpPoly out;
  for (const auto& [b, p] : terms_) out.terms_.emplace(b / r, p);
  return out;
}

ExpPoly ExpPoly::divided_by(const Polynomial& g) const {
  ExpPoly out;
  for (const auto& [b, p] : terms_) {
    auto [q, rem] = Polynomial::divmod(p, g);
    if (!rem.is_zero()) throw Error(ErrorCode::invalid_argument, "inexact polynomial division");
    out.terms_.emplace(b, q);
  }
  return out;
}

ExpPoly ExpPoly::pow(unsigned exponent) const {
  ExpPoly result = constant(Rational(1));
  ExpPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

ExpPoly ExpPoly::shifted(long k) const {
  const Polynomial shift{Rational(k), Rational(1)};
  ExpPoly out;
  for (const auto& [b, p] : terms_) out.add_term(b, p.compose(shift) * b.pow(k));
  return out;
}

Rational ExpPoly::operator()(std::uint64_t n) const {
  const Rational x(static_cast<unsigned long>(n));
  Rational sum(0);
  for (const auto& [b, p] : terms_) sum += b.pow(static_cast<long>(n)) * p(x);
  return sum;
}

namespace {

Rational abs_coeff_sum(const Polynomial& p, int below_degree) {
  Rational s(0);
  for (int j = 0; j < std::min<int>(below_degree, p.degree() + 1); ++j) s += p.coeff(j).abs();
  return s;
}

}  // namespace

std::uint64_t ExpPoly::dominance_certificate() const {
  if (terms_.empty()) throw Error(ErrorCode::invalid_argument, "zero exponential polynomial has no sign");
  const auto& [r0, p0] = dominant();
  const int d = p0.degree();
  const Rational lead = p0.leading().abs();
  const Rational tail0 = abs_coeff_sum(p0, d);

  struct Minor {
    Rational ratio;
    Rational bound;
    int excess;
  };
  std::vector<Minor> minors;
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    minors.push_back({it->first / r0, abs_coeff_sum(it->second, it->second.degree() + 1),
                      it->second.degree() - d});

  // For n >= N: |E(n)| / (r0^n n^d) >= lead - tail0/n - sum bound*ratio^n*n^excess,
  // and every subtracted term is nonincreasing once N passes its turning point.
  auto certified = [&](std::uint64_t n) {
    const Rational x(static_cast<unsigned long>(n));
    const Rational x1 = x + Rational(1);
    Rational loss = tail0 / x;
    for (const auto& m : minors) {
      if (m.excess > 0 && m.ratio * x1.pow(m.excess) > x.pow(m.excess)) return false;
      loss += m.bound * m.ratio.pow(static_cast<long>(n)) * x.pow(m.excess);
      if (loss >= lead) return false;
    }
    return loss < lead;
  };

  constexpr std::uint64_t kCap = std::uint64_t{1} << 20;
  std::uint64_t hi = 1;
  while (!certified(hi)) {
    hi *= 2;
    if (hi > kCap)
      throw Error(ErrorCode::unsupported_form, "eventual sign needs more than 2^20 indices to certify");
  }
  std::uint64_t lo = hi / 2;  // certified(lo) is false or lo == 0
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (mid >= 1 && certified(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [b, p] : terms_) {
    if (!out.empty()) out += " + ";
    const std::string body = "(" + p.to_string("n") + ")";
    out += b == Rational(1) ? body : "geom(" + b.to_string() + ")*" + body;
  }
  return out;
}

std::string ExtendedValue::to_string() const {
  switch (kind) {
    case Kind::minus_infinity: return "-inf";
    case Kind::plus_infinity: return "+inf";
    case Kind::finite: break;
  }
  return value.to_string();
}

ExtendedValue ExpQuotient::limit() const {
  if (num.is_zero()) return ExtendedValue::finite(Rational(0));
  const auto [ratio, excess] = growth();
  const int sign = num.dominant().second.leading().sign() * den.dominant().second.leading().sign();
  if (ratio > Rational(1) || (ratio == Rational(1) && excess > 0)) return ExtendedValue::infinity(sign);
  if (ratio < Rational(1) || excess < 0) return ExtendedValue::finite(Rational(0));
  return ExtendedValue::finite(num.dominant().second.leading() / den.dominant().second.leading());
}

std::pair<Rational, int> ExpQuotient::growth() const {
  if (num.is_zero()) return {Rational(0), 0};
  const auto& [rn, pn] = num.dominant();
  const auto& [rd, pd] = den.dominant();
  return {rn / rd, pn.degree() - pd.degree()};
}

}  // namespace hypercalc
