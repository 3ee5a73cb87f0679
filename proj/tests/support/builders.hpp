#pragma once
// Expression builders and a direct tree evaluator for sequences.

#include <optional>
#include <random>
#include <vector>

#include "hypercalc/error.hpp"
#include "hypercalc/expr.hpp"
#include "oracles.hpp"

namespace oracle {

using hypercalc::ExprNode;
using hypercalc::FuncExpr;
using hypercalc::Op;
using hypercalc::SeqExpr;

inline FuncExpr func_of(const Polynomial& p) {
  FuncExpr acc = FuncExpr::constant(Rational(0));
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    FuncExpr term = FuncExpr::constant(p.coeff(i));
    if (i > 0) term = term * hypercalc::pow(FuncExpr::x(), static_cast<long>(i));
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

inline SeqExpr seq_of(const Polynomial& p) {
  SeqExpr acc = SeqExpr::constant(Rational(0));
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    SeqExpr term = SeqExpr::constant(p.coeff(i));
    if (i > 0) term = term * hypercalc::pow(SeqExpr::n(), static_cast<long>(i));
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

/// Antiderivative with zero constant term, coefficient by coefficient.
inline Polynomial antiderivative(const Polynomial& p) {
  Polynomial r;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    r += Polynomial::monomial(p.coeff(i) / Rational(static_cast<long>(i + 1)), i + 1);
  return r;
}

/// Value of a sequence tree at index n; nullopt where a division by zero
/// or a negative power of zero occurs.
inline std::optional<Rational> seq_value(const ExprNode& e, long n) {
  auto arg = [&](std::size_t i) { return seq_value(*e.args[i], n); };
  switch (e.op) {
    case Op::constant: return e.value;
    case Op::variable: return Rational(n);
    case Op::geom: return e.value.pow(n);
    case Op::altsign: return Rational(n % 2 == 0 ? 1 : -1);
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      auto a = arg(0), b = arg(1);
      if (!a || !b) return std::nullopt;
      if (e.op == Op::add) return *a + *b;
      if (e.op == Op::sub) return *a - *b;
      if (e.op == Op::mul) return *a * *b;
      if (b->is_zero()) return std::nullopt;
      return *a / *b;
    }
    case Op::neg: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Op::pow: {
      auto a = arg(0);
      if (!a) return std::nullopt;
      if (e.exponent < 0 && a->is_zero()) return std::nullopt;
      return a->pow(e.exponent);
    }
    case Op::patch:
      for (const auto& p : e.patches)
        if (p.index == static_cast<std::uint64_t>(n)) return p.value;
      return arg(0);
    default: throw hypercalc::Error(hypercalc::ErrorCode::unsupported_form, "not a sequence node");
  }
}

/// Random sequence from the closed-form grammar.
inline SeqExpr random_seq(Rng& rng, int depth) {
  static const Rational bases[] = {Rational(1, 3), Rational(1, 2), Rational(2), Rational(3, 2), Rational(3),
                                   Rational(-1, 2), Rational(-2)};
  if (depth <= 0 || uniform(rng, 0, 3) == 0) {
    switch (uniform(rng, 0, 5)) {
      case 0: return SeqExpr::n();
      case 1: return SeqExpr::constant(random_rational(rng, 9));
      case 2: return SeqExpr::geom(bases[uniform(rng, 0, 6)]);
      case 3: return SeqExpr::altsign();
      case 4: return hypercalc::pow(SeqExpr::n(), uniform(rng, 2, 3));
      default: return SeqExpr::n() + SeqExpr::constant(Rational(uniform(rng, -5, 5)));
    }
  }
  const SeqExpr a = random_seq(rng, depth - 1);
  switch (uniform(rng, 0, 6)) {
    case 0:
    case 1: return a + random_seq(rng, depth - 1);
    case 2: return a - random_seq(rng, depth - 1);
    case 3: return a * random_seq(rng, depth - 1);
    case 4: return a / (SeqExpr::n() + SeqExpr::constant(Rational(uniform(rng, 1, 4))));
    case 5: return -a;
    default: {
      std::vector<hypercalc::PatchEntry> entries;
      const long k = uniform(rng, 1, 3);
      for (long i = 0; i < k; ++i)
        entries.push_back({static_cast<std::uint64_t>(uniform(rng, 0, 12) * 3 + i), random_rational(rng, 50)});
      return SeqExpr::patch(entries, a);
    }
  }
}

}  // namespace oracle
