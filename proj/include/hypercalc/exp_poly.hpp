#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "hypercalc/polynomial.hpp"

namespace hypercalc {

/// Exponential polynomial sum_r r^n * P_r(n) in the index n, with distinct
/// positive rational bases r and nonzero polynomial coefficients P_r.
/// A nonzero exponential polynomial has finitely many real zeros, so its
/// sign is eventually constant: the sign of the leading coefficient of the
/// polynomial attached to the largest base.
class ExpPoly {
 public:
  using TermMap = std::map<Rational, Polynomial, std::greater<>>;

  ExpPoly() = default;
  static ExpPoly constant(const Rational& c);
  static ExpPoly index();  // n
  static ExpPoly geometric(const Rational& base);
  static ExpPoly term(const Rational& base, const Polynomial& p);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }
  /// Largest base and its polynomial; requires a nonzero value.
  const std::pair<const Rational, Polynomial>& dominant() const { return *terms_.begin(); }
  int eventual_sign() const { return terms_.empty() ? 0 : dominant().second.leading().sign(); }
  int max_degree() const;

  ExpPoly operator-() const;
  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

  ExpPoly scaled(const Rational& s) const;
  /// Divides every base by `r` (multiplies the value by r^-n).
  ExpPoly rebased(const Rational& r) const;
  /// Divides every polynomial by `g` exactly; `g` must divide all of them.
  ExpPoly divided_by(const Polynomial& g) const;
  ExpPoly pow(unsigned exponent) const;
  /// E(n + k).
  ExpPoly shifted(long k) const;

  Rational operator()(std::uint64_t n) const;

  /// Index N such that E(n) is nonzero with the eventual sign for every
  /// n >= N. Certified by dominance of the leading term over the sum of
  /// the remaining terms, each bound being nonincreasing beyond N.
  std::uint64_t dominance_certificate() const;

  std::string to_string() const;

 private:
  void add_term(const Rational& base, const Polynomial& p);
  TermMap terms_;
};

/// Extended standard value: a rational or a signed infinity.
struct ExtendedValue {
  enum class Kind { minus_infinity, finite, plus_infinity };
  Kind kind = Kind::finite;
  Rational value;

  static ExtendedValue finite(const Rational& v) { return {Kind::finite, v}; }
  static ExtendedValue infinity(int sign) {
    return {sign < 0 ? Kind::minus_infinity : Kind::plus_infinity, Rational(0)};
  }
  bool is_finite() const { return kind == Kind::finite; }
  /// "+inf", "-inf" or the rational as "p/q".
  std::string to_string() const;

  friend bool operator==(const ExtendedValue&, const ExtendedValue&) = default;
  friend bool operator<(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.kind == Kind::finite && a.value < b.value;
  }
};

/// Quotient num/den of exponential polynomials: one parity class of a
/// normalized sequence.
struct ExpQuotient {
  ExpPoly num;
  ExpPoly den = ExpPoly::constant(Rational(1));

  Rational operator()(std::uint64_t n) const { return num(n) / den(n); }
  bool same_value(const ExpQuotient& o) const { return num * o.den == o.num * den; }
  int eventual_sign() const { return num.eventual_sign() * den.eventual_sign(); }
  /// Limit of the quotient along the integers.
  ExtendedValue limit() const;
  /// Dominant growth: ratio of leading bases and degree difference.
  std::pair<Rational, int> growth() const;
};

}  // namespace hypercalc
