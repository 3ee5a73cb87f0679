#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "hypercalc/error.hpp"
#include "hypercalc/expr.hpp"
#include "hypercalc/rational.hpp"

namespace hypercalc {

/// Exact rational or binary floating-point scalar.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(const Rational& q) : v_(q) {}
  Scalar(int v) : v_(Rational(v)) {}
  Scalar(double d) : v_(d) {}

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  const Rational& exact() const { return std::get<Rational>(v_); }
  double to_double() const { return is_exact() ? exact().to_double() : std::get<double>(v_); }
  /// "p/q" in exact mode, shortest round-trip decimal otherwise.
  std::string to_string() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::variant<Rational, double> v_;
};

inline int scalar_sign(double d) { return (d > 0) - (d < 0); }
inline int scalar_sign(const Rational& q) { return q.sign(); }

/// Truncated power series c_0 + c_1 e + ... + c_K e^K in an infinitesimal e.
/// All arithmetic drops powers above K.
template <class T>
class Jet {
 public:
  Jet() : c_(2, T(0)) {}
  explicit Jet(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.size() < 2) c_.resize(2, T(0));
  }
  static Jet constant(const T& v, unsigned order) {
    std::vector<T> c(order + 1, T(0));
    c[0] = v;
    return Jet(std::move(c));
  }
  /// p + slope * e.
  static Jet variable(const T& p, unsigned order, const T& slope = T(1)) {
    Jet j = constant(p, order);
    j.c_[1] = slope;
    return j;
  }

  unsigned order() const { return static_cast<unsigned>(c_.size() - 1); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<T>& coeffs() const { return c_; }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Jet operator+(Jet a, const Jet& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    check(a, b);
    const std::size_t n = a.c_.size();
    std::vector<T> c(n, T(0));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i <= k; ++i) c[k] += a.c_[i] * b.c_[k - i];
    return Jet(std::move(c));
  }
  friend Jet operator*(Jet a, const T& s) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    check(a, b);
    if (b.c_[0] == T(0)) throw Error(ErrorCode::domain, "division by a jet with zero constant term");
    const std::size_t n = a.c_.size();
    std::vector<T> q(n, T(0));
    for (std::size_t k = 0; k < n; ++k) {
      T acc = a.c_[k];
      for (std::size_t i = 1; i <= k; ++i) acc -= b.c_[i] * q[k - i];
      q[k] = acc / b.c_[0];
    }
    return Jet(std::move(q));
  }
  Jet pow(long e) const {
    if (e < 0) return constant(T(1), order()) / pow(-e);
    Jet result = constant(T(1), order());
    Jet base = *this;
    for (unsigned long k = static_cast<unsigned long>(e); k > 0; k >>= 1) {
      if (k & 1ul) result = result * base;
      if (k > 1) base = base * base;
    }
    return result;
  }
  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  static void check(const Jet& a, const Jet& b) {
    if (a.c_.size() != b.c_.size()) throw Error(ErrorCode::invalid_argument, "jets of different order");
  }
  std::vector<T> c_;
};

// Transcendental lifts; only meaningful for floating-point jets.

inline Jet<double> exp(const Jet<double>& a) {
  const std::size_t n = a.order() + 1;
  std::vector<double> e(n, 0.0);
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return Jet<double>(std::move(e));
}

inline Jet<double> ln(const Jet<double>& a) {
  if (!(a[0] > 0)) throw Error(ErrorCode::domain, "ln of a nonpositive value");
  const std::size_t n = a.order() + 1;
  std::vector<double> l(n, 0.0);
  l[0] = std::log(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0;
    for (std::size_t j = 1; j < k; ++j) acc += static_cast<double>(j) * l[j] * a[k - j];
    l[k] = (a[k] - acc / static_cast<double>(k)) / a[0];
  }
  return Jet<double>(std::move(l));
}

/// sin and cos of a jet, computed together.
inline std::pair<Jet<double>, Jet<double>> sincos(const Jet<double>& a) {
  const std::size_t n = a.order() + 1;
  std::vector<double> s(n, 0.0), c(n, 0.0);
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double as = 0, ac = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      as += static_cast<double>(j) * a[j] * c[k - j];
      ac += static_cast<double>(j) * a[j] * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
  return {Jet<double>(std::move(s)), Jet<double>(std::move(c))};
}

inline Jet<double> sin(const Jet<double>& a) { return sincos(a).first; }
inline Jet<double> cos(const Jet<double>& a) { return sincos(a).second; }

inline Jet<double> sqrt(const Jet<double>& a) {
  if (a[0] < 0) throw Error(ErrorCode::domain, "sqrt of a negative value");
  if (a[0] == 0) throw Error(ErrorCode::domain, "sqrt is not differentiable at 0");
  const std::size_t n = a.order() + 1;
  std::vector<double> r(n, 0.0);
  r[0] = std::sqrt(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = a[k];
    for (std::size_t j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (2 * r[0]);
  }
  return Jet<double>(std::move(r));
}

template <class T>
Jet<T> abs(const Jet<T>& a) {
  const int s = scalar_sign(a[0]);
  if (s == 0) throw Error(ErrorCode::kink, "abs is not differentiable at 0");
  return s > 0 ? a : -a;
}

}  // namespace hypercalc
