#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "hypercalc/error.hpp"
#include "hypercalc/expr.hpp"
#include "hypercalc/filters.hpp"
#include "hypercalc/ultrapower.hpp"

namespace hypercalc {

enum class InputKind { hyper_term, sequence, function, filter_family };
std::string_view to_string(InputKind k) noexcept;

using SpanMap = std::map<const ExprNode*, SourceSpan>;

struct ParsedInput {
  InputKind kind = InputKind::hyper_term;
  ExprPtr ast;                                   // expression kinds
  std::optional<filters::FiniteFamily> family;   // filter_family
  SpanMap spans;                                 // every node of `ast`

  SourceSpan span_of(const ExprNode& node) const;
};

struct ParseOptions {
  /// Names usable in hyper terms (REPL bindings). Unknown identifiers are
  /// syntax errors.
  std::set<std::string> bound_names;
};

/// Grammar (all kinds share the lexer):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ['^' ['-'] INTEGER]
///   primary := NUMBER | '(' expr ')' | atom
/// Hyper terms: W, eps, geom(r) with r > 0, bound names.
/// Sequences:   n, altsign, geom(r), patch[(i,v),...]{expr}.
/// Functions:   x, pi, exp ln sin cos sqrt abs applied as name(expr).
/// Filter families are JSON: {"universe": k, "members": [[0,1],[2],...]}.
/// Negated constants and quotients of constants are folded into constants.
ParsedInput parse(InputKind kind, std::string_view text, const ParseOptions& opts = {});

SeqExpr parse_sequence(std::string_view text);
FuncExpr parse_function(std::string_view text);

/// Expression kinds only; filter families render as JSON.
std::string render(const ParsedInput& in);

using Environment = std::map<std::string, HyperImage>;

/// Value of a hyper-term AST. Errors raised by a node's own operation carry
/// that node's span when `spans` is given.
HyperImage evaluate_hyper_term(const ExprNode& root, const Environment& env = {},
                               const SpanMap* spans = nullptr);

/// Standard rational value of a closed function expression (no `x`).
/// `pi` and transcendental functions are evaluated in floating point and
/// converted exactly from the double.
struct ClosedValue {
  Rational value;
  bool exact = true;
};
ClosedValue evaluate_closed(const FuncExpr& f);

}  // namespace hypercalc
