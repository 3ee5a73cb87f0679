#include "hypercalc/polynomial.hpp"

#include <cstdint>
#include <optional>

#include "hypercalc/error.hpp"

namespace hypercalc {

Polynomial::Polynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  Polynomial r = *this;
  const Rational lc = leading();
  for (auto& x : r.c_) x /= lc;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  Polynomial r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * inner;
    r += constant(*it);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(Rational(1));
  Polynomial base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double Polynomial::evaluate(double x) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_double();
  return r;
}

Rational Polynomial::magnitude_bound(const Rational& radius) const {
  Rational r;
  const Rational rad = radius.abs();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * rad + it->abs();
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::division_by_zero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
  const Rational lc = b.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Rational& top = rem[k + b.c_.size() - 1];
    if (top.is_zero()) continue;
    const Rational q = top / lc;
    quo[k] = q;
    for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
  }
  rem.resize(b.c_.size() - 1);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

namespace {

// Modular image check: if both polynomials stay of full degree modulo a
// prime and are coprime there, they are coprime over the rationals.
constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::optional<std::uint64_t> reduce(const Rational& r) {
  static const BigInt p(std::to_string(kPrime));
  BigInt n = r.numerator() % p;
  if (n < 0) n += p;
  BigInt d = r.denominator() % p;
  if (d == 0) return std::nullopt;
  const std::uint64_t nn = std::stoull(n.get_str());
  const std::uint64_t dd = std::stoull(d.get_str());
  return mulmod(nn, invmod(dd));
}

std::optional<std::vector<std::uint64_t>> image(const Polynomial& p) {
  std::vector<std::uint64_t> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    auto r = reduce(c);
    if (!r) return std::nullopt;
    v.push_back(*r);
  }
  if (v.empty() || v.back() == 0) return std::nullopt;
  return v;
}

int modular_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (a.size() >= b.size()) {
      const std::uint64_t inv = invmod(b.back());
      while (a.size() >= b.size() && !a.empty()) {
        const std::uint64_t q = mulmod(a.back(), inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
          const std::uint64_t t = mulmod(q, b[j]);
          a[shift + j] = (a[shift + j] + kPrime - t) % kPrime;
        }
        trim(a);
      }
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return constant(Rational(1));
  if (auto ia = image(a)) {
    if (auto ib = image(b)) {
      if (modular_gcd_degree(*ia, *ib) == 0) return constant(Rational(1));
    }
  }
  Polynomial x = a.monic();
  Polynomial y = b.monic();
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::string Polynomial::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    const Rational mag = c.abs();
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    const bool unit = mag == Rational(1);
    if (k == 0 || !unit) {
      const std::string m = mag.to_string();
      const bool wrap = k != 0 && !mag.is_integer();
      out += wrap ? "(" + m + ")" : m;
      if (k != 0) out += "*";
    }
    if (k >= 1) out += std::string(var);
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial prefix_sum(const Polynomial& p) {
  // power_sums[j](n) = sum_{k=0}^{n} k^j, from
  // (n+1)^{j+1} = sum_{i<=j} C(j+1, i) power_sums[i](n).
  const int d = p.degree();
  std::vector<Polynomial> power_sums;
  const Polynomial next{Rational(1), Rational(1)};  // n + 1
  for (int j = 0; j <= d; ++j) {
    Polynomial acc = next.pow(static_cast<unsigned>(j + 1));
    for (int i = 0; i < j; ++i)
      acc -= power_sums[i] * Rational(binomial(static_cast<unsigned long>(j + 1), static_cast<unsigned long>(i)));
    power_sums.push_back(acc * Rational(1, j + 1));
  }
  Polynomial out;
  for (int j = 0; j <= d; ++j) out += power_sums[j] * p.coeff(j);
  return out;
}

}  // namespace hypercalc
