#include "hypercalc/calculus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "hypercalc/expr_eval.hpp"
#include "hypercalc/hyper_rat.hpp"

namespace hypercalc {

std::string Scalar::to_string() const {
  if (is_exact()) return exact().to_string();
  const double d = std::get<double>(v_);
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

namespace {

template <class T>
struct JetDomain {
  using value_type = Jet<T>;
  unsigned order;

  Jet<T> constant(const Rational& c) const {
    if constexpr (std::is_same_v<T, Rational>) return Jet<T>::constant(c, order);
    else return Jet<T>::constant(c.to_double(), order);
  }
  Jet<T> pi() const {
    if constexpr (std::is_same_v<T, double>) return Jet<T>::constant(3.14159265358979323846, order);
    else transcendental("pi");
  }
  Jet<T> add(const Jet<T>& a, const Jet<T>& b) const { return a + b; }
  Jet<T> sub(const Jet<T>& a, const Jet<T>& b) const { return a - b; }
  Jet<T> mul(const Jet<T>& a, const Jet<T>& b) const { return a * b; }
  Jet<T> div(const Jet<T>& a, const Jet<T>& b) const { return a / b; }
  Jet<T> neg(const Jet<T>& a) const { return -a; }
  Jet<T> pow(const Jet<T>& a, long e) const { return a.pow(e); }
  Jet<T> exp(const Jet<T>& a) const { return lift(a, [](const auto& v) { return hypercalc::exp(v); }, "exp"); }
  Jet<T> ln(const Jet<T>& a) const { return lift(a, [](const auto& v) { return hypercalc::ln(v); }, "ln"); }
  Jet<T> sin(const Jet<T>& a) const { return lift(a, [](const auto& v) { return hypercalc::sin(v); }, "sin"); }
  Jet<T> cos(const Jet<T>& a) const { return lift(a, [](const auto& v) { return hypercalc::cos(v); }, "cos"); }
  Jet<T> sqrt(const Jet<T>& a) const { return lift(a, [](const auto& v) { return hypercalc::sqrt(v); }, "sqrt"); }
  Jet<T> abs(const Jet<T>& a) const { return hypercalc::abs(a); }

  template <class F>
  static Jet<T> lift(const Jet<T>& a, F f, const char* what) {
    if constexpr (std::is_same_v<T, double>) {
      (void)what;
      return f(a);
    } else {
      (void)a;
      (void)f;
      transcendental(what);
    }
  }
  [[noreturn]] static void transcendental(const char* what) {
    throw Error(ErrorCode::unsupported_form, std::string(what) + " requires floating mode");
  }
};

bool use_exact(const FuncExpr& f, const Scalar& p, ScalarMode mode) {
  const bool possible = p.is_exact() && f.is_rational_only();
  switch (mode) {
    case ScalarMode::automatic: return possible;
    case ScalarMode::floating: return false;
    case ScalarMode::exact:
      if (!possible)
        throw Error(ErrorCode::unsupported_form,
                    "exact mode needs a rational point and a rational function");
      return true;
  }
  return possible;
}

template <class T>
T point_as(const Scalar& p) {
  if constexpr (std::is_same_v<T, Rational>) return p.exact();
  else return p.to_double();
}

template <class T>
bool negligible(const T& v, double threshold) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)threshold;
    return v.is_zero();
  } else {
    return std::fabs(v) <= threshold;
  }
}

template <class T>
IncrementDerivative increments(const FuncExpr& f, const T& p, unsigned n) {
  Jet<T> delta = Jet<T>::constant(T(0), n);
  for (unsigned k = 0; k <= n; ++k) {
    const Jet<T> fk = compose(f, Jet<T>::variable(p, n, T(static_cast<int>(k))));
    T weight{};
    if constexpr (std::is_same_v<T, Rational>) weight = Rational(binomial(n, k));
    else weight = Rational(binomial(n, k)).to_double();
    if ((n - k) % 2 == 1) weight = -weight;
    delta = delta + fk * weight;
  }
  const Jet<T> base = compose(f, Jet<T>::variable(p, n));
  T factorial = T(1);
  for (unsigned k = 2; k <= n; ++k) factorial = factorial * T(static_cast<int>(k));
  const T from_jet = factorial * base[n];

  IncrementDerivative out;
  out.value = Scalar(delta[n]);
  out.from_jet = Scalar(from_jet);
  if constexpr (std::is_same_v<T, Rational>) {
    out.lower_cancel = true;
    for (unsigned j = 0; j < n; ++j) out.lower_cancel = out.lower_cancel && delta[j].is_zero();
    out.consistent = delta[n] == from_jet;
  } else {
    // rounding in the signed binomial combination grows like 2^n
    double scale = 1;
    for (unsigned j = 0; j <= n; ++j) scale = std::max(scale, std::fabs(base[j]));
    const double tol = 1e-12 * scale * std::ldexp(1.0, static_cast<int>(n)) * factorial;
    out.lower_cancel = true;
    for (unsigned j = 0; j < n; ++j) out.lower_cancel = out.lower_cancel && std::fabs(delta[j]) <= tol;
    out.consistent = std::fabs(delta[n] - from_jet) <= tol;
  }
  return out;
}

template <class T>
std::optional<unsigned> first_nonzero(const Jet<T>& j, double threshold) {
  for (unsigned i = 0; i <= j.order(); ++i)
    if (!negligible(j[i], threshold)) return i;
  return std::nullopt;
}

template <class T>
LimitValue lhospital_impl(const FuncExpr& f, const FuncExpr& g, const T& a, const LhospitalOptions& opts) {
  unsigned order = std::min(4u, opts.max_order);
  bool checked = false;
  for (;;) {
    const Jet<T> x = Jet<T>::variable(a, order);
    const Jet<T> fj = compose(f, x);
    const Jet<T> gj = compose(g, x);
    if (!checked) {
      if (!negligible(fj[0], opts.zero_threshold) || !negligible(gj[0], opts.zero_threshold))
        throw Error(ErrorCode::not_indeterminate,
                    "not a 0/0 form: f(a) = " + Scalar(fj[0]).to_string() +
                        ", g(a) = " + Scalar(gj[0]).to_string());
      checked = true;
    }
    const auto i_f = first_nonzero(fj, opts.zero_threshold);
    const auto i_g = first_nonzero(gj, opts.zero_threshold);
    if (i_g && (!i_f || *i_f > *i_g)) return {LimitValue::Kind::finite, Scalar(T(0))};
    if (i_f && i_g) {
      if (*i_f == *i_g) return {LimitValue::Kind::finite, Scalar(T(fj[*i_f] / gj[*i_g]))};
      const int s = scalar_sign(fj[*i_f]) * scalar_sign(gj[*i_g]);
      return {s > 0 ? LimitValue::Kind::plus_infinity : LimitValue::Kind::minus_infinity, Scalar(T(0))};
    }
    if (order >= opts.max_order)
      throw Error(ErrorCode::order_exhausted,
                  "denominator vanishes to order " + std::to_string(opts.max_order));
    order = std::min(order * 2, opts.max_order);
  }
}

}  // namespace

unsigned LiftedJet::order() const {
  return std::visit([](const auto& j) { return j.order(); }, jet);
}

Scalar LiftedJet::coeff(unsigned j) const {
  return std::visit([&](const auto& v) { return Scalar(v[j]); }, jet);
}

Jet<Rational> compose(const FuncExpr& f, const Jet<Rational>& input) {
  return evaluate_function(f.root(), input, JetDomain<Rational>{input.order()});
}

Jet<double> compose(const FuncExpr& f, const Jet<double>& input) {
  return evaluate_function(f.root(), input, JetDomain<double>{input.order()});
}

LiftedJet jet_lift(const FuncExpr& f, const Scalar& p, unsigned order, ScalarMode mode) {
  if (order < 1) throw Error(ErrorCode::invalid_argument, "jet order must be at least 1");
  if (use_exact(f, p, mode))
    return {p, compose(f, Jet<Rational>::variable(p.exact(), order))};
  return {Scalar(p.to_double()), compose(f, Jet<double>::variable(p.to_double(), order))};
}

Scalar derivative(const FuncExpr& f, const Scalar& p, ScalarMode mode) {
  return jet_lift(f, p, 1, mode).coeff(1);
}

Differential differential(const FuncExpr& f, const Scalar& p, unsigned tail_order, ScalarMode mode) {
  const LiftedJet j = jet_lift(f, p, std::max(1u, tail_order), mode);
  Differential d;
  d.slope = j.coeff(1);
  for (unsigned k = 2; k <= j.order(); ++k) d.tail.push_back(j.coeff(k));
  d.description = "df = " + d.slope.to_string() + " dx";
  return d;
}

IncrementDerivative nth_derivative_via_increments(const FuncExpr& f, const Scalar& p, unsigned n,
                                                  ScalarMode mode) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "increment order must be at least 1");
  if (use_exact(f, p, mode)) return increments<Rational>(f, p.exact(), n);
  return increments<double>(f, p.to_double(), n);
}

std::string LimitValue::to_string() const {
  switch (kind) {
    case Kind::minus_infinity: return "-inf";
    case Kind::plus_infinity: return "+inf";
    case Kind::finite: break;
  }
  return value.to_string();
}

LimitValue lhospital(const FuncExpr& f, const FuncExpr& g, const Scalar& a, const LhospitalOptions& opts) {
  const bool exact = use_exact(f, a, opts.mode) && use_exact(g, a, opts.mode);
  if (exact) return lhospital_impl<Rational>(f, g, a.exact(), opts);
  return lhospital_impl<double>(f, g, a.to_double(), opts);
}

bool microcontinuity_probe(const FuncExpr& f, const Rational& p) {
  if (!f.is_rational_only())
    throw Error(ErrorCode::unsupported_form, "microcontinuity probe needs a rational function");
  Rational value;
  try {
    value = evaluate_exact(f, p);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::division_by_zero)
      throw Error(ErrorCode::singular_at_point, "function is undefined at " + p.to_string());
    throw;
  }
  const HyperRat fp(value);
  for (int side : {1, -1}) {
    const HyperRat x = HyperRat(p) + HyperRat(Rational(side)) * HyperRat::epsilon();
    if (!infinitely_close(compose_rational(f, x), fp)) return false;
  }
  return true;
}

}  // namespace hypercalc
