#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hypercalc/polynomial.hpp"
#include "hypercalc/rational.hpp"

namespace hypercalc {

class FuncExpr;

enum class Order { less, equal, greater };
std::string_view to_string(Order o) noexcept;

enum class Tag { zero, infinitesimal, appreciable, infinite };
enum class Sign { negative, zero, positive };

std::string_view to_string(Tag t) noexcept;
std::string_view to_string(Sign s) noexcept;
Sign sign_of(int s) noexcept;

struct Classification {
  Tag tag = Tag::zero;
  Sign sign = Sign::zero;

  bool is_finite() const { return tag != Tag::infinite; }
  friend bool operator==(const Classification&, const Classification&) = default;
};

/// An element of the computable hyperreal fragment: a reduced ratio of two
/// rational-coefficient polynomials in the canonical infinite element W
/// (the class of the identity sequence k -> k).
///
/// Canonical form: the denominator is monic and coprime to the numerator,
/// and zero is 0/1. Two elements are equal iff their canonical forms match.
class HyperRat {
 public:
  HyperRat() : den_(Polynomial::constant(Rational(1))) {}
  HyperRat(const Rational& c) : num_(Polynomial::constant(c)), den_(Polynomial::constant(Rational(1))) {}
  HyperRat(int c) : HyperRat(Rational(c)) {}

  /// num/den, reduced to canonical form. Throws on a zero denominator.
  HyperRat(const Polynomial& num, const Polynomial& den);

  /// The canonical infinite element W.
  static HyperRat omega();
  /// 1/W.
  static HyperRat epsilon();

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// Value when the element is a standard rational (constant num and den).
  std::optional<Rational> as_standard() const;
  /// -1, 0 or +1: the eventual sign of the representative sequence.
  int sign() const { return num_.leading().sign(); }

  HyperRat abs() const { return sign() < 0 ? -*this : *this; }
  HyperRat pow(long exponent) const;
  HyperRat reciprocal() const;

  HyperRat operator-() const;
  friend HyperRat operator+(const HyperRat& a, const HyperRat& b);
  friend HyperRat operator-(const HyperRat& a, const HyperRat& b);
  friend HyperRat operator*(const HyperRat& a, const HyperRat& b);
  friend HyperRat operator/(const HyperRat& a, const HyperRat& b);
  HyperRat& operator+=(const HyperRat& o) { return *this = *this + o; }
  HyperRat& operator-=(const HyperRat& o) { return *this = *this - o; }
  HyperRat& operator*=(const HyperRat& o) { return *this = *this * o; }
  HyperRat& operator/=(const HyperRat& o) { return *this = *this / o; }

  friend bool operator==(const HyperRat&, const HyperRat&) = default;

  /// Text in the hyper-term grammar, with `W` for the infinite element.
  std::string to_string() const;

 private:
  HyperRat(Polynomial num, Polynomial den, bool /*already canonical*/)
      : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

enum class ArithOp { add, sub, mul, div };
HyperRat arith(ArithOp op, const HyperRat& a, const HyperRat& b);

/// Total order of the field; reads the sign of the leading coefficient of
/// num(a - b), which is the eventual pointwise order of representatives.
Order compare(const HyperRat& a, const HyperRat& b);
inline bool operator<(const HyperRat& a, const HyperRat& b) { return compare(a, b) == Order::less; }
inline bool operator<=(const HyperRat& a, const HyperRat& b) { return compare(a, b) != Order::greater; }

/// Degree comparison of numerator and denominator.
Classification classify(const HyperRat& a);

/// Unique standard rational infinitely close to a finite element.
/// Throws `infinite_argument` for infinite elements.
Rational standard_part(const HyperRat& a);

bool infinitely_close(const HyperRat& a, const HyperRat& b);
bool same_galaxy(const HyperRat& a, const HyperRat& b);

/// Value A(n) of the canonical representative sequence. Throws
/// `pole_at_index` when the denominator vanishes at n.
Rational eval_at_index(const HyperRat& a, const BigInt& n);

/// Index beyond which num(a) has no root, so the representative sequence
/// has the eventual sign of `a` for every n >= the bound (Cauchy root bound).
BigInt sign_stable_index(const HyperRat& a);

/// Exact evaluation of a rational function expression at a hyperreal.
/// The expression may only use constants, x, field operations and integer
/// powers; throws `identically_singular` when a denominator is zero at `a`.
HyperRat compose_rational(const FuncExpr& f, const HyperRat& a);

}  // namespace hypercalc
