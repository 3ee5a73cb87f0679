#include "hypercalc/hyper_rat.hpp"

#include <cctype>

#include "hypercalc/error.hpp"

namespace hypercalc {

std::string_view to_string(Order o) noexcept {
  switch (o) {
    case Order::less: return "less";
    case Order::equal: return "equal";
    case Order::greater: return "greater";
  }
  return "?";
}

std::string_view to_string(Tag t) noexcept {
  switch (t) {
    case Tag::zero: return "zero";
    case Tag::infinitesimal: return "infinitesimal";
    case Tag::appreciable: return "appreciable";
    case Tag::infinite: return "infinite";
  }
  return "?";
}

std::string_view to_string(Sign s) noexcept {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

Sign sign_of(int s) noexcept { return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero); }

HyperRat::HyperRat(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::division_by_zero, "hyperreal with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial::constant(Rational(1));
    return;
  }
  const Polynomial g = Polynomial::gcd(num, den);
  Polynomial n = num;
  Polynomial d = den;
  if (g.degree() > 0) {
    n = Polynomial::divmod(num, g).first;
    d = Polynomial::divmod(den, g).first;
  }
  const Rational lc = d.leading();
  if (lc != Rational(1)) {
    const Rational inv = lc.reciprocal();
    n *= inv;
    d *= inv;
  }
  num_ = std::move(n);
  den_ = std::move(d);
}

HyperRat HyperRat::omega() {
  return HyperRat(Polynomial::variable(), Polynomial::constant(Rational(1)), true);
}

HyperRat HyperRat::epsilon() {
  return HyperRat(Polynomial::constant(Rational(1)), Polynomial::variable(), true);
}

std::optional<Rational> HyperRat::as_standard() const {
  if (num_.degree() <= 0 && den_.degree() == 0) return num_.coeff(0);
  return std::nullopt;
}

HyperRat HyperRat::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  const auto e = static_cast<unsigned>(exponent);
  return HyperRat(num_.pow(e), den_.pow(e), true);
}

HyperRat HyperRat::reciprocal() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "reciprocal of zero hyperreal");
  return HyperRat(den_, num_);
}

HyperRat HyperRat::operator-() const { return HyperRat(-num_, den_, true); }

HyperRat operator+(const HyperRat& a, const HyperRat& b) {
  if (a.den_ == b.den_) return HyperRat(a.num_ + b.num_, a.den_);
  return HyperRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

HyperRat operator-(const HyperRat& a, const HyperRat& b) { return a + (-b); }

HyperRat operator*(const HyperRat& a, const HyperRat& b) {
  if (a.is_zero() || b.is_zero()) return HyperRat();
  return HyperRat(a.num_ * b.num_, a.den_ * b.den_);
}

HyperRat operator/(const HyperRat& a, const HyperRat& b) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "division by zero hyperreal");
  return HyperRat(a.num_ * b.den_, a.den_ * b.num_);
}

std::string HyperRat::to_string() const {
  auto atom = [](std::string s) {
    for (char ch : s)
      if (!std::isalnum(static_cast<unsigned char>(ch))) return "(" + s + ")";
    return s;
  };
  if (den_.degree() == 0) return num_.to_string("W");
  return atom(num_.to_string("W")) + "/" + atom(den_.to_string("W"));
}

HyperRat arith(ArithOp op, const HyperRat& a, const HyperRat& b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw Error(ErrorCode::invalid_argument, "unknown arithmetic operation");
}

Order compare(const HyperRat& a, const HyperRat& b) {
  if (a == b) return Order::equal;
  const int s = (a - b).sign();
  return s < 0 ? Order::less : (s > 0 ? Order::greater : Order::equal);
}

Classification classify(const HyperRat& a) {
  if (a.is_zero()) return {Tag::zero, Sign::zero};
  const int dn = a.num().degree();
  const int dd = a.den().degree();
  const Tag tag = dn > dd ? Tag::infinite : (dn < dd ? Tag::infinitesimal : Tag::appreciable);
  return {tag, sign_of(a.sign())};
}

Rational standard_part(const HyperRat& a) {
  const Classification c = classify(a);
  switch (c.tag) {
    case Tag::zero:
    case Tag::infinitesimal: return Rational(0);
    case Tag::appreciable: return a.num().leading();  // den is monic
    case Tag::infinite: break;
  }
  throw Error(ErrorCode::infinite_argument, "standard part of infinite element " + a.to_string());
}

bool infinitely_close(const HyperRat& a, const HyperRat& b) {
  const Tag t = classify(a - b).tag;
  return t == Tag::zero || t == Tag::infinitesimal;
}

bool same_galaxy(const HyperRat& a, const HyperRat& b) { return classify(a - b).tag != Tag::infinite; }

Rational eval_at_index(const HyperRat& a, const BigInt& n) {
  const Rational x(n);
  const Rational d = a.den()(x);
  if (d.is_zero())
    throw Error(ErrorCode::pole_at_index, "pole of " + a.to_string() + " at index " + n.get_str());
  return a.num()(x) / d;
}

BigInt sign_stable_index(const HyperRat& a) {
  auto root_bound = [](const Polynomial& p) {
    if (p.degree() <= 0) return Rational(0);
    Rational m;
    const Rational lc = p.leading().abs();
    for (int i = 0; i < p.degree(); ++i) m = max(m, p.coeff(static_cast<std::size_t>(i)).abs() / lc);
    return Rational(1) + m;
  };
  const Rational bound = max(root_bound(a.num()), root_bound(a.den()));
  return bound.floor() + 1;
}

}  // namespace hypercalc
