#include "hypercalc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "hypercalc/expr_eval.hpp"

namespace hypercalc {

std::string_view to_string(InputKind k) noexcept {
  switch (k) {
    case InputKind::hyper_term: return "hyper_term";
    case InputKind::sequence: return "sequence";
    case InputKind::function: return "function";
    case InputKind::filter_family: return "filter_family";
  }
  return "?";
}

SourceSpan ParsedInput::span_of(const ExprNode& node) const {
  auto it = spans.find(&node);
  return it == spans.end() ? SourceSpan{} : it->second;
}

namespace {

enum class Tok { number, ident, op, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;
};

std::string describe(const Token& t) {
  return t.kind == Tok::end ? std::string("end of input") : "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::string_view("+-*/^()[]{},").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::op, std::string(1, static_cast<char>(c)), start});
      ++i;
      continue;
    }
    throw ParseError(ErrorCode::syntax, "unexpected character", {start, 1});
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

constexpr long kMaxExponent = 4096;

const char* variable_for(ExprKind k) {
  switch (k) {
    case ExprKind::hyper_term: return "W";
    case ExprKind::sequence: return "n";
    case ExprKind::function: return "x";
  }
  return "";
}

Op function_op(const std::string& name) {
  if (name == "exp") return Op::exp;
  if (name == "ln") return Op::ln;
  if (name == "sin") return Op::sin;
  if (name == "cos") return Op::cos;
  if (name == "sqrt") return Op::sqrt;
  if (name == "abs") return Op::abs;
  return Op::constant;
}

class Parser {
 public:
  Parser(ExprKind kind, std::string_view text, const ParseOptions& opts, SpanMap& spans)
      : kind_(kind), toks_(lex(text)), opts_(opts), spans_(spans) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::end) fail("unexpected " + describe(peek()), peek());
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at_op(char c) const { return peek().kind == Tok::op && peek().text[0] == c; }

  [[noreturn]] void fail(const std::string& msg, const Token& t, ErrorCode code = ErrorCode::syntax) const {
    throw ParseError(code, msg, {t.offset, std::max<std::size_t>(t.text.size(), 1)});
  }

  const Token& expect(char c) {
    if (!at_op(c)) fail(std::string("expected '") + c + "', found " + describe(peek()), peek());
    return next();
  }

  std::size_t end_offset() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].offset + toks_[pos_ - 1].text.size(); }

  ExprPtr note(ExprPtr n, std::size_t start) {
    spans_[n.get()] = {start, end_offset() - start};
    return n;
  }

  static ExprPtr fold_neg(ExprPtr a) {
    if (a->op == Op::constant) return expr::constant(-a->value);
    return expr::unary(Op::neg, std::move(a));
  }

  static ExprPtr fold_div(ExprPtr a, ExprPtr b) {
    if (a->op == Op::constant && b->op == Op::constant && !b->value.is_zero())
      return expr::constant(a->value / b->value);
    return expr::binary(Op::div, std::move(a), std::move(b));
  }

  ExprPtr expr() {
    const std::size_t start = peek().offset;
    ExprPtr lhs = term();
    while (at_op('+') || at_op('-')) {
      const Op op = next().text[0] == '+' ? Op::add : Op::sub;
      ExprPtr rhs = term();
      lhs = note(expr::binary(op, std::move(lhs), std::move(rhs)), start);
    }
    return lhs;
  }

  ExprPtr term() {
    const std::size_t start = peek().offset;
    ExprPtr lhs = unary();
    while (at_op('*') || at_op('/')) {
      const bool mul = next().text[0] == '*';
      ExprPtr rhs = unary();
      lhs = note(mul ? expr::binary(Op::mul, std::move(lhs), std::move(rhs)) : fold_div(std::move(lhs), std::move(rhs)),
                 start);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_op('-')) {
      const std::size_t start = next().offset;
      return note(fold_neg(unary()), start);
    }
    return power();
  }

  ExprPtr power() {
    const std::size_t start = peek().offset;
    ExprPtr base = primary();
    if (!at_op('^')) return base;
    next();
    bool negative = false;
    if (at_op('-')) {
      next();
      negative = true;
    }
    const Token& t = peek();
    if (t.kind != Tok::number || t.text.find('.') != std::string::npos)
      fail("exponent must be an integer literal", t);
    next();
    if (t.text.size() > 4 || std::stol(t.text) > kMaxExponent) fail("exponent magnitude above 4096", t);
    const long e = std::stol(t.text);
    return note(expr::power(std::move(base), negative ? -e : e), start);
  }

  // Signed rational literal: ['-'] NUMBER ['/' NUMBER].
  Rational literal() {
    bool negative = false;
    if (at_op('-')) {
      next();
      negative = true;
    }
    const Token& t = peek();
    if (t.kind != Tok::number) fail("expected a number, found " + describe(t), t);
    next();
    Rational v = Rational::parse(t.text);
    if (at_op('/')) {
      next();
      const Token& d = peek();
      if (d.kind != Tok::number) fail("expected a denominator, found " + describe(d), d);
      next();
      const Rational den = Rational::parse(d.text);
      if (den.is_zero()) fail("zero denominator", d, ErrorCode::division_by_zero);
      v = v / den;
    }
    return negative ? -v : v;
  }

  ExprPtr primary() {
    const Token& t = peek();
    const std::size_t start = t.offset;
    if (t.kind == Tok::number) {
      next();
      return note(expr::constant(Rational::parse(t.text)), start);
    }
    if (at_op('(')) {
      next();
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (t.kind != Tok::ident) fail("expected an operand, found " + describe(t), t);
    next();
    return note(atom(t), start);
  }

  ExprPtr atom(const Token& t) {
    const std::string& name = t.text;
    if (name == "W" || name == "n" || name == "x") {
      if (name != variable_for(kind_))
        fail("variable '" + name + "' is not allowed here; use '" + variable_for(kind_) + "'", t,
             ErrorCode::wrong_variable);
      return expr::variable();
    }
    switch (kind_) {
      case ExprKind::hyper_term:
        if (name == "eps") return expr::binary(Op::div, expr::constant(Rational(1)), expr::variable());
        if (name == "geom") return geom(t);
        if (opts_.bound_names.count(name)) {
          auto n = std::make_shared<ExprNode>();
          n->op = Op::bound;
          n->name = name;
          return n;
        }
        break;
      case ExprKind::sequence:
        if (name == "altsign") return SeqExpr::altsign().ptr();
        if (name == "geom") return geom(t);
        if (name == "patch") return patch();
        break;
      case ExprKind::function:
        if (name == "pi") return FuncExpr::pi().ptr();
        if (const Op op = function_op(name); op != Op::constant) {
          expect('(');
          ExprPtr arg = expr();
          expect(')');
          return expr::unary(op, std::move(arg));
        }
        break;
    }
    fail("unknown name '" + name + "'", t);
  }

  ExprPtr geom(const Token& t) {
    expect('(');
    const Token& at = peek();
    const Rational base = literal();
    expect(')');
    if (base.is_zero()) fail("geom base must be nonzero", at, ErrorCode::domain);
    if (kind_ == ExprKind::hyper_term && base.sign() < 0)
      fail("geom base must be positive in a hyper term", at, ErrorCode::domain);
    (void)t;
    return SeqExpr::geom(base).ptr();
  }

  ExprPtr patch() {
    expect('[');
    std::vector<PatchEntry> entries;
    std::set<std::uint64_t> seen;
    if (!at_op(']')) {
      for (;;) {
        expect('(');
        const Token& it = peek();
        if (it.kind != Tok::number || it.text.find('.') != std::string::npos || it.text.size() > 18)
          fail("patch index must be a natural number", it);
        next();
        const std::uint64_t idx = std::stoull(it.text);
        if (!seen.insert(idx).second) fail("duplicate patch index", it);
        expect(',');
        const Rational v = literal();
        expect(')');
        entries.push_back({idx, v});
        if (!at_op(',')) break;
        next();
      }
    }
    expect(']');
    expect('{');
    ExprPtr body = expr();
    expect('}');
    return SeqExpr::patch(std::move(entries), SeqExpr(std::move(body))).ptr();
  }

  ExprKind kind_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  SpanMap& spans_;
};

ExprKind expr_kind(InputKind k) {
  switch (k) {
    case InputKind::hyper_term: return ExprKind::hyper_term;
    case InputKind::sequence: return ExprKind::sequence;
    default: return ExprKind::function;
  }
}

filters::FiniteFamily parse_family(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(ErrorCode::syntax, "malformed family JSON", {std::min(at, text.size()), 1});
  }
  const SourceSpan whole{0, text.size()};
  if (!j.is_object() || !j.contains("universe") || !j.contains("members"))
    throw ParseError(ErrorCode::syntax, "family must be an object with 'universe' and 'members'", whole);
  const json& u = j["universe"];
  if (!u.is_number_unsigned() || u.get<std::uint64_t>() > filters::kMaxUniverse)
    throw ParseError(ErrorCode::invalid_argument,
                     "'universe' must be a natural number <= " + std::to_string(filters::kMaxUniverse), whole);
  const auto size = u.get<unsigned>();
  const json& ms = j["members"];
  if (!ms.is_array()) throw ParseError(ErrorCode::syntax, "'members' must be an array", whole);
  std::vector<filters::Subset> members;
  for (const json& m : ms) {
    if (!m.is_array()) throw ParseError(ErrorCode::syntax, "each member must be an array of elements", whole);
    filters::Subset s = 0;
    for (const json& e : m) {
      if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= size)
        throw ParseError(ErrorCode::invalid_argument, "member element outside the universe", whole);
      s |= filters::Subset{1} << e.get<unsigned>();
    }
    members.push_back(s);
  }
  return filters::FiniteFamily(size, std::move(members));
}

}  // namespace

ParsedInput parse(InputKind kind, std::string_view text, const ParseOptions& opts) {
  ParsedInput out;
  out.kind = kind;
  if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
    throw ParseError(ErrorCode::syntax, "empty input", {0, text.size()});
  if (kind == InputKind::filter_family) {
    out.family = parse_family(text);
    return out;
  }
  Parser p(expr_kind(kind), text, opts, out.spans);
  out.ast = p.parse_all();
  return out;
}

SeqExpr parse_sequence(std::string_view text) { return SeqExpr(parse(InputKind::sequence, text).ast); }
FuncExpr parse_function(std::string_view text) { return FuncExpr(parse(InputKind::function, text).ast); }

std::string render(const ParsedInput& in) {
  if (in.kind == InputKind::filter_family) return filters::to_json(*in.family);
  return render(*in.ast, expr_kind(in.kind));
}

namespace {

HyperExp as_growth(const HyperImage& h) {
  if (const auto* r = std::get_if<HyperRat>(&h)) return HyperExp(*r);
  return std::get<HyperExp>(h);
}

HyperImage simplify(const HyperExp& e) {
  if (auto r = e.as_rational()) return *r;
  return e;
}

HyperImage eval_node(const ExprNode& n, const Environment& env, const SpanMap* spans) {
  std::vector<HyperImage> args;
  for (const auto& a : n.args) args.push_back(eval_node(*a, env, spans));
  try {
    auto both_rational = [&] {
      return args.size() == 2 && std::holds_alternative<HyperRat>(args[0]) && std::holds_alternative<HyperRat>(args[1]);
    };
    switch (n.op) {
      case Op::constant: return HyperRat(n.value);
      case Op::variable: return HyperRat::omega();
      case Op::bound: {
        auto it = env.find(n.name);
        if (it == env.end()) throw Error(ErrorCode::invalid_argument, "unbound name '" + n.name + "'");
        return it->second;
      }
      case Op::geom: return simplify(HyperExp::geometric(n.value));
      case Op::add:
        if (both_rational()) return std::get<HyperRat>(args[0]) + std::get<HyperRat>(args[1]);
        return simplify(as_growth(args[0]) + as_growth(args[1]));
      case Op::sub:
        if (both_rational()) return std::get<HyperRat>(args[0]) - std::get<HyperRat>(args[1]);
        return simplify(as_growth(args[0]) - as_growth(args[1]));
      case Op::mul:
        if (both_rational()) return std::get<HyperRat>(args[0]) * std::get<HyperRat>(args[1]);
        return simplify(as_growth(args[0]) * as_growth(args[1]));
      case Op::div:
        if (both_rational()) return std::get<HyperRat>(args[0]) / std::get<HyperRat>(args[1]);
        return simplify(as_growth(args[0]) / as_growth(args[1]));
      case Op::neg:
        if (const auto* r = std::get_if<HyperRat>(&args[0])) return -*r;
        return -std::get<HyperExp>(args[0]);
      case Op::pow: {
        if (const auto* r = std::get_if<HyperRat>(&args[0])) return r->pow(n.exponent);
        const HyperExp base = std::get<HyperExp>(args[0]);
        HyperExp acc(1);
        for (long k = 0; k < std::labs(n.exponent); ++k) acc = acc * base;
        return simplify(n.exponent < 0 ? HyperExp(1) / acc : acc);
      }
      default:
        throw Error(ErrorCode::unsupported_form, "operation not available in hyper terms");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (!spans) throw;
    auto it = spans->find(&n);
    if (it == spans->end()) throw;
    throw ParseError(e.code(), e.what(), it->second);
  }
}

}  // namespace

HyperImage evaluate_hyper_term(const ExprNode& root, const Environment& env, const SpanMap* spans) {
  return eval_node(root, env, spans);
}

ClosedValue evaluate_closed(const FuncExpr& f) {
  std::function<bool(const ExprNode&)> mentions_x = [&](const ExprNode& n) {
    if (n.op == Op::variable) return true;
    return std::any_of(n.args.begin(), n.args.end(), [&](const ExprPtr& a) { return mentions_x(*a); });
  };
  if (mentions_x(f.root())) throw Error(ErrorCode::invalid_argument, "expected a constant, found an expression in x");
  if (f.is_rational_only()) return {evaluate_exact(f, Rational(0)), true};
  const double v = evaluate_float(f, 0.0);
  if (!std::isfinite(v)) throw Error(ErrorCode::domain, "constant does not evaluate to a finite number");
  return {Rational::from_double(v), false};
}

}  // namespace hypercalc
