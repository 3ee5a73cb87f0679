#include "hypercalc/rational.hpp"

#include <cmath>

#include "hypercalc/error.hpp"

namespace hypercalc {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::usage: return "usage";
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::wrong_variable: return "wrong_variable";
    case ErrorCode::division_by_zero: return "division_by_zero";
    case ErrorCode::domain: return "domain";
    case ErrorCode::kink: return "kink";
    case ErrorCode::infinite_argument: return "infinite_argument";
    case ErrorCode::pole_at_index: return "pole_at_index";
    case ErrorCode::identically_singular: return "identically_singular";
    case ErrorCode::singular_at_point: return "singular_at_point";
    case ErrorCode::unsupported_form: return "unsupported_form";
    case ErrorCode::ultrafilter_dependent: return "ultrafilter_dependent";
    case ErrorCode::no_closed_form: return "no_closed_form";
    case ErrorCode::unknown_sum: return "unknown_sum";
    case ErrorCode::not_indeterminate: return "not_indeterminate";
    case ErrorCode::order_exhausted: return "order_exhausted";
    case ErrorCode::empty_set: return "empty_set";
    case ErrorCode::fip_violation: return "fip_violation";
    case ErrorCode::not_a_filter: return "not_a_filter";
    case ErrorCode::not_representable: return "not_representable";
    case ErrorCode::bad_interval: return "bad_interval";
    case ErrorCode::unverifiable_bounds: return "unverifiable_bounds";
    case ErrorCode::depth_cap: return "depth_cap";
    case ErrorCode::unbounded_sample: return "unbounded_sample";
    case ErrorCode::additivity_violation: return "additivity_violation";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::division_by_zero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::domain, "non-finite value cannot be made rational");
  mpq_class q;
  q = v;  // exact: every finite double is a dyadic rational
  return Rational(q);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::syntax, "empty number");
  if (auto dot = s.find('.'); dot != std::string::npos) {
    bool negative = s[0] == '-';
    std::string digits = s.substr(negative ? 1 : 0);
    dot = digits.find('.');
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.find_first_not_of("0123456789") != std::string::npos ||
        whole.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::syntax, "malformed decimal '" + s + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = BigInt(whole.empty() ? std::string("0") : whole) * scale +
                 (frac.empty() ? BigInt(0) : BigInt(frac));
    Rational r(num, scale);
    return negative ? -r : r;
  }
  try {
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::syntax, "malformed rational '" + s + "'");
  }
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "reciprocal of zero");
  return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  mpq_class q(num, den);
  return Rational(q);
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::division_by_zero, "division by zero");
  q_ /= o.q_;
  return *this;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace hypercalc
