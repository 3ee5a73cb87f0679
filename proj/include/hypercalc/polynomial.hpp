#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypercalc/rational.hpp"

namespace hypercalc {

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending order of degree. Trailing zero coefficients are never stored, so
/// the zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  Polynomial(std::initializer_list<Rational> ascending)
      : Polynomial(std::vector<Rational>(ascending)) {}

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t degree);
  static Polynomial variable() { return monomial(Rational(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  /// Leading coefficient; zero for the zero polynomial.
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Polynomial monic() const;
  Polynomial derivative() const;
  /// p(inner(x)).
  Polynomial compose(const Polynomial& inner) const;
  Polynomial pow(unsigned exponent) const;

  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;

  /// Sum of |coefficient| * r^i; bounds |p(x)| for |x| <= r.
  Rational magnitude_bound(const Rational& r) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division; throws on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic greatest common divisor; gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace hypercalc

namespace hypercalc {

/// The polynomial S with S(n) = sum_{k=0}^{n} p(k) for every natural n.
Polynomial prefix_sum(const Polynomial& p);

}  // namespace hypercalc
