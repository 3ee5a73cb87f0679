#include "hypercalc/hyper_exp.hpp"

#include <algorithm>
#include <map>

#include "hypercalc/error.hpp"

namespace hypercalc {

namespace {

using TermMap = std::map<Rational, HyperRat, std::greater<>>;

std::vector<GrowthTerm> collect(const TermMap& m) {
  std::vector<GrowthTerm> out;
  for (const auto& [base, body] : m)
    if (!body.is_zero()) out.push_back({base, body});
  return out;
}

}  // namespace

HyperExp::HyperExp(const HyperRat& rational) {
  if (!rational.is_zero()) terms_.push_back({Rational(1), rational});
}

HyperExp HyperExp::geometric(const Rational& base) {
  if (base.sign() <= 0) throw Error(ErrorCode::domain, "geometric base must be positive");
  HyperExp r;
  r.terms_.push_back({base, HyperRat(1)});
  return r;
}

HyperExp HyperExp::from_terms(std::vector<GrowthTerm> terms) {
  TermMap m;
  for (auto& t : terms) {
    if (t.base.sign() <= 0) throw Error(ErrorCode::domain, "geometric base must be positive");
    auto [it, inserted] = m.try_emplace(t.base, t.body);
    if (!inserted) it->second += t.body;
  }
  HyperExp r;
  r.terms_ = collect(m);
  return r;
}

std::optional<HyperRat> HyperExp::as_rational() const {
  if (terms_.empty()) return HyperRat();
  if (terms_.size() == 1 && terms_.front().base == Rational(1)) return terms_.front().body;
  return std::nullopt;
}

HyperRat HyperExp::rational_part() const {
  for (const auto& t : terms_)
    if (t.base == Rational(1)) return t.body;
  return HyperRat();
}

HyperExp HyperExp::operator-() const {
  HyperExp r = *this;
  for (auto& t : r.terms_) t.body = -t.body;
  return r;
}

HyperExp operator+(const HyperExp& a, const HyperExp& b) {
  TermMap m;
  for (const auto& t : a.terms_) m.emplace(t.base, t.body);
  for (const auto& t : b.terms_) {
    auto [it, inserted] = m.try_emplace(t.base, t.body);
    if (!inserted) it->second += t.body;
  }
  HyperExp r;
  r.terms_ = collect(m);
  return r;
}

HyperExp operator*(const HyperExp& a, const HyperExp& b) {
  TermMap m;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      const Rational base = x.base * y.base;
      const HyperRat body = x.body * y.body;
      auto [it, inserted] = m.try_emplace(base, body);
      if (!inserted) it->second += body;
    }
  }
  HyperExp r;
  r.terms_ = collect(m);
  return r;
}

HyperExp operator/(const HyperExp& a, const HyperExp& b) {
  if (b.terms_.empty()) throw Error(ErrorCode::division_by_zero, "division by zero growth element");
  if (b.terms_.size() != 1)
    throw Error(ErrorCode::unsupported_form, "growth division requires a single-term divisor");
  const GrowthTerm& d = b.terms_.front();
  HyperExp r;
  TermMap m;
  for (const auto& t : a.terms_) m.emplace(t.base / d.base, t.body / d.body);
  r.terms_ = collect(m);
  return r;
}

std::string HyperExp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string piece;
    if (t.base == Rational(1)) {
      piece = "(" + t.body.to_string() + ")";
    } else {
      piece = "geom(" + t.base.to_string() + ")";
      if (t.body != HyperRat(1)) piece += "*(" + t.body.to_string() + ")";
    }
    if (!out.empty()) out += "+";
    out += piece;
  }
  return out;
}

HyperExp growth_arith(GrowthOp op, const HyperExp& a, const HyperExp& b) {
  return op == GrowthOp::add ? a + b : a * b;
}

Order compare(const HyperExp& a, const HyperExp& b) {
  const int s = (a - b).sign();
  return s < 0 ? Order::less : (s > 0 ? Order::greater : Order::equal);
}

Classification classify(const HyperExp& a) {
  if (a.is_zero()) return {Tag::zero, Sign::zero};
  const GrowthTerm& top = a.dominant();
  const Sign sign = sign_of(top.body.sign());
  if (top.base > Rational(1)) return {Tag::infinite, sign};
  if (top.base == Rational(1)) return classify(top.body);
  return {Tag::infinitesimal, sign};
}

Rational standard_part(const HyperExp& a) {
  if (classify(a).tag == Tag::infinite)
    throw Error(ErrorCode::infinite_argument, "standard part of infinite element " + a.to_string());
  return standard_part(a.rational_part());
}

GrowthSummary growth_classify_st(const HyperExp& a) { return {classify(a), standard_part(a)}; }

}  // namespace hypercalc
