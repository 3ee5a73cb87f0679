#include "hypercalc/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <istream>
#include <new>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "hypercalc/filters.hpp"
#include "hypercalc/parser.hpp"
#include "hypercalc/report_json.hpp"

namespace hypercalc::cli {

namespace {

using report::Json;

struct Globals {
  bool json = false;
  std::optional<double> tol;
  std::string mode = "auto";
  std::optional<unsigned> max_depth;
};

struct Outcome {
  Json payload = Json::object();
  std::string text;
};

struct Session {
  Environment env;
};

// A parse error together with the argument text its span points into.
class InputError : public ParseError {
 public:
  InputError(const ParseError& e, std::string source)
      : ParseError(e.code(), e.what(), e.span()), source_(std::move(source)) {}
  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

template <class F>
auto with_source(const std::string& text, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const ParseError& e) {
    throw InputError(e, text);
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"classify", "st",        "cmp",       "seq",    "series",
                                                 "deriv",    "lhospital", "integrate", "filter", "repl"};
  return names;
}

bool is_reserved(const std::string& name) {
  static const std::set<std::string> words = {"W",   "n",   "x",    "eps", "geom", "altsign", "patch",
                                              "pi",  "exp", "ln",   "sin", "cos",  "sqrt",    "abs",
                                              "let", "quit", "exit"};
  return words.count(name) > 0 ||
         std::find(command_names().begin(), command_names().end(), name) != command_names().end();
}

ScalarMode scalar_mode(const Globals& g) {
  if (g.mode == "exact") return ScalarMode::exact;
  if (g.mode == "float" || g.mode == "refine") return ScalarMode::floating;
  return ScalarMode::automatic;
}

HyperImage term_arg(const std::string& text, const Session& s) {
  return with_source(text, [&] {
    ParseOptions opts;
    for (const auto& [name, value] : s.env) opts.bound_names.insert(name);
    const ParsedInput p = parse(InputKind::hyper_term, text, opts);
    return evaluate_hyper_term(*p.ast, s.env, &p.spans);
  });
}

SeqExpr seq_arg(const std::string& text) {
  return with_source(text, [&] { return parse_sequence(text); });
}

FuncExpr fn_arg(const std::string& text) {
  return with_source(text, [&] { return parse_function(text); });
}

ClosedValue constant_arg(const std::string& text) {
  const FuncExpr f = fn_arg(text);
  return evaluate_closed(f);
}

Scalar point_arg(const std::string& text) {
  const ClosedValue v = constant_arg(text);
  return v.exact ? Scalar(v.value) : Scalar(v.value.to_double());
}

Classification classify_image(const HyperImage& h) {
  return std::visit([](const auto& v) { return classify(v); }, h);
}

std::string describe(const Classification& c) {
  return std::string(to_string(c.tag)) + ", " + std::string(to_string(c.sign));
}

// --- commands ---------------------------------------------------------------

Outcome do_classify(const std::string& term, const Session& s) {
  const Classification c = classify_image(term_arg(term, s));
  return {report::to_json(c), describe(c)};
}

Outcome do_st(const std::string& term, const Session& s) {
  const HyperImage h = term_arg(term, s);
  const Rational v = std::visit([](const auto& x) { return standard_part(x); }, h);
  return {Json{{"st", v.to_string()}}, v.to_string()};
}

Outcome do_cmp(const std::string& lhs, const std::string& rhs, const Session& s) {
  const HyperImage a = term_arg(lhs, s), b = term_arg(rhs, s);
  Outcome o;
  const auto* ra = std::get_if<HyperRat>(&a);
  const auto* rb = std::get_if<HyperRat>(&b);
  Order ord;
  if (ra && rb) {
    ord = compare(*ra, *rb);
    o.payload["infinitely_close"] = infinitely_close(*ra, *rb);
    o.payload["same_galaxy"] = same_galaxy(*ra, *rb);
  } else {
    auto growth = [](const HyperImage& h) {
      if (const auto* r = std::get_if<HyperRat>(&h)) return HyperExp(*r);
      return std::get<HyperExp>(h);
    };
    ord = compare(growth(a), growth(b));
  }
  o.payload["order"] = std::string(to_string(ord));
  o.text = std::string(to_string(ord));
  return o;
}

Outcome do_seq(const std::string& text, const std::optional<std::string>& vs, const std::optional<std::uint64_t>& at) {
  const SeqExpr s = seq_arg(text);
  Outcome o;
  if (at) {
    const auto v = evaluate_at(s, *at);
    o.payload["index"] = *at;
    o.payload["value"] = v ? Json(v->to_string()) : Json(nullptr);
    o.text = v ? v->to_string() : "undefined";
    return o;
  }
  if (vs) {
    const FrechetVerdict v = frechet_compare(s, seq_arg(*vs));
    o.payload = report::to_json(v);
    o.text = v.decisive() ? std::string(to_string(v.relation)) + " (every index >= " +
                                std::to_string(v.exception_bound) + ")"
                          : "ultrafilter_dependent (even indices: " + std::string(to_string(v.even)) +
                                ", odd indices: " + std::string(to_string(v.odd)) + ")";
    return o;
  }
  try {
    const HyperImage h = to_hyper(s);
    o.payload["verdict"] = "determined";
    o.payload["class"] = to_string(h);
    o.payload["classification"] = report::to_json(classify_image(h));
    o.text = "class: " + to_string(h) + " (" + describe(classify_image(h)) + ")";
  } catch (const UltrafilterDependence& e) {
    o.payload["verdict"] = "ultrafilter_dependent";
    o.payload["witness_classes"] = Json{{"even", e.even_candidate()}, {"odd", e.odd_candidate()}};
    o.text = "ultrafilter_dependent: even indices give " + e.even_candidate() + ", odd indices give " +
             e.odd_candidate();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_form) throw;
    o.payload["verdict"] = "unrepresented";
    o.text = "class: not representable in closed form";
  }
  const ConvergenceReport r = analyze(s);
  o.payload["convergence"] = report::to_json(r);
  o.text += "\nlimit points: ";
  bool first = true;
  for (const auto& p : r.limit_points) {
    o.text += (first ? "" : ", ") + p.to_string();
    first = false;
  }
  o.text += "\nliminf: " + r.liminf.to_string() + ", limsup: " + r.limsup.to_string();
  return o;
}

Outcome do_series(const std::string& text, const std::optional<std::string>& antidiff) {
  const SeqExpr term = seq_arg(text);
  std::optional<SeqExpr> g;
  if (antidiff) g = seq_arg(*antidiff);
  const SeriesReport r = series_analyze(term, g);
  Outcome o{report::to_json(r), std::string(to_string(r.verdict))};
  if (r.value) o.text += " to " + r.value->to_string();
  else if (r.diverges_to) o.text += " to " + r.diverges_to->to_string();
  o.text += " (" + r.method + ")";
  return o;
}

Outcome do_deriv(const Globals& g, const std::string& f_text, const std::string& at, unsigned order) {
  const FuncExpr f = fn_arg(f_text);
  const Scalar p = point_arg(at);
  Outcome o;
  if (order <= 1) {
    const Scalar v = derivative(f, p, scalar_mode(g));
    o.payload["value"] = v.to_string();
    o.payload["exact"] = v.is_exact();
    o.text = v.to_string();
  } else {
    const IncrementDerivative d = nth_derivative_via_increments(f, p, order, scalar_mode(g));
    o.payload["value"] = d.value.to_string();
    o.payload["exact"] = d.value.is_exact();
    o.payload["consistent"] = d.consistent;
    o.text = d.value.to_string();
  }
  o.payload["order"] = std::max(order, 1u);
  return o;
}

Outcome do_lhospital(const Globals& g, const std::string& f, const std::string& h, const std::string& at) {
  LhospitalOptions opts;
  opts.mode = scalar_mode(g);
  if (g.max_depth) opts.max_order = *g.max_depth;
  const LimitValue v = lhospital(fn_arg(f), fn_arg(h), point_arg(at), opts);
  return {Json{{"value", v.to_string()}, {"exact", v.value.is_exact()}}, v.to_string()};
}

Outcome do_integrate(const Globals& g, const std::string& f_text, const std::string& from, const std::string& to,
                     const std::optional<std::string>& monotone) {
  const FuncExpr f = fn_arg(f_text);
  const ClosedValue a = constant_arg(from), b = constant_arg(to);
  Integrand in = Integrand::from_expr(f);
  if (monotone) in = Integrand::monotone(f, *monotone == "decreasing" ? Direction::decreasing : Direction::increasing);
  IntegralOptions opts;
  if (g.tol) opts.tol = *g.tol;
  if (g.max_depth) opts.max_cells = std::uint64_t{1} << *g.max_depth;
  if (g.mode == "float" || g.mode == "refine") opts.symbolic = false;
  const IntegralResult r = integrate(in, a.value, b.value, opts);
  if (g.mode == "exact" && !r.exact_value)
    throw Error(ErrorCode::unverifiable_bounds, "no exact value for this integrand; drop --mode exact");
  Outcome o{report::to_json(r), ""};
  if (!a.exact || !b.exact) {
    o.payload["endpoints_rounded"] = true;
    o.payload["certificate"] = r.certificate + "; endpoints rounded to binary64 values";
  }
  o.text = o.payload["value"].get<std::string>() + " (" + std::string(to_string(r.tag));
  if (r.tag != IntegralTag::exact) o.text += ", gap " + o.payload["gap"].get<std::string>();
  o.text += ")";
  return o;
}

filters::FiniteFamily family_arg(const std::string& text) {
  return with_source(text, [&] { return *parse(InputKind::filter_family, text).family; });
}

Outcome family_outcome(const filters::FiniteFamily& fam) {
  Json members = Json::parse(filters::to_json(fam));
  return {Json{{"universe", fam.universe_size()}, {"members", members}}, filters::to_json(fam)};
}

Outcome do_filter_check(const std::string& text) {
  const auto fam = family_arg(text);
  const bool f = filters::is_filter(fam), u = filters::is_ultrafilter(fam);
  return {Json{{"filter", f}, {"ultrafilter", u}},
          std::string("filter: ") + (f ? "yes" : "no") + ", ultrafilter: " + (u ? "yes" : "no")};
}

Outcome do_filter_principal(unsigned universe, const std::vector<unsigned>& generator) {
  if (universe > filters::kMaxUniverse)
    throw Error(ErrorCode::invalid_argument, "universe size above " + std::to_string(filters::kMaxUniverse));
  filters::Subset s = 0;
  for (unsigned e : generator) {
    if (e >= universe) throw Error(ErrorCode::invalid_argument, "generator element outside the universe");
    s |= filters::Subset{1} << e;
  }
  return family_outcome(filters::principal_filter(universe, s));
}

// --- output -----------------------------------------------------------------

void emit(const Globals& g, Outcome o, std::ostream& out) {
  if (g.json) {
    o.payload["schema"] = report::kSchema;
    o.payload["status"] = "ok";
    out << report::dump(o.payload) << '\n';
  } else {
    out << o.text << '\n';
  }
}

std::string printable(const std::string& s) {
  std::string r = s;
  for (char& c : r)
    if (!std::isprint(static_cast<unsigned char>(c))) c = '?';
  return r;
}

int emit_error(bool json, std::string_view code, const std::string& message, const std::optional<SourceSpan>& span,
               const std::string& source, std::ostream& out, std::ostream& err) {
  if (json) {
    Json diag{{"message", message}};
    if (span) diag["span"] = Json{{"offset", span->offset}, {"length", span->length}};
    Json j{{"schema", report::kSchema},
           {"status", "error"},
           {"error", Json{{"code", std::string(code)}, {"message", message}}},
           {"diagnostics", Json::array({diag})}};
    out << report::dump(j) << '\n';
  } else {
    err << "error[" << code << "]: " << message << '\n';
    if (span) {
      const std::size_t off = std::min(span->offset, source.size());
      const std::size_t len = std::max<std::size_t>(1, std::min(span->length, source.size() + 1 - off));
      err << "  | " << printable(source) << '\n' << "  | " << std::string(off, ' ') << std::string(len, '^') << '\n';
    }
  }
  return code == "usage" ? 2 : 1;
}

int execute(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err, Session& session,
            bool allow_repl);

int run_repl(const Globals& g, std::istream& in, std::ostream& out, std::ostream& err, Session& session) {
  std::vector<std::string> prefix;
  if (g.json) prefix.push_back("--json");
  if (g.tol) prefix.insert(prefix.end(), {"--tol", std::to_string(*g.tol)});
  prefix.insert(prefix.end(), {"--mode", g.mode});
  if (g.max_depth) prefix.insert(prefix.end(), {"--max-depth", std::to_string(*g.max_depth)});

  int status = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line == "quit" || line == "exit") break;

    std::vector<std::string> tokens;
    try {
      tokens = split_line(line);
    } catch (const Error& e) {
      status = std::max(status, emit_error(g.json, error_code_name(e.code()), e.what(), std::nullopt, line, out, err));
      continue;
    }
    const bool is_command =
        std::find(command_names().begin(), command_names().end(), tokens.front()) != command_names().end();
    if (is_command) {
      std::vector<std::string> full = prefix;
      full.insert(full.end(), tokens.begin(), tokens.end());
      status = std::max(status, execute(full, in, out, err, session, false));
      continue;
    }

    std::string source = line;
    try {
      if (tokens.front() == "let") {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::syntax, "expected 'let NAME = TERM'");
        std::string name = line.substr(3, eq - 3);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        const bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                           std::all_of(name.begin(), name.end(), [](char c) {
                             return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                           });
        if (!ident) throw Error(ErrorCode::syntax, "binding name must be an identifier");
        if (is_reserved(name)) throw Error(ErrorCode::invalid_argument, "'" + name + "' is a reserved word");
        if (session.env.count(name))
          throw Error(ErrorCode::invalid_argument, "'" + name + "' is already bound; bindings are immutable");
        source = line.substr(eq + 1);
        const HyperImage value = term_arg(source, session);
        session.env.emplace(name, value);
        emit(g, {Json{{"name", name}, {"value", to_string(value)}}, name + " = " + to_string(value)}, out);
      } else {
        const HyperImage value = term_arg(line, session);
        const Classification c = classify_image(value);
        Json j = report::to_json(c);
        j["value"] = to_string(value);
        emit(g, {j, to_string(value) + "  (" + describe(c) + ")"}, out);
      }
    } catch (const InputError& e) {
      status = std::max(status, emit_error(g.json, error_code_name(e.code()), e.what(), e.span(), e.source(), out, err));
    } catch (const Error& e) {
      status = std::max(status, emit_error(g.json, error_code_name(e.code()), e.what(), std::nullopt, source, out, err));
    }
  }
  return status;
}

int execute(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err, Session& session,
            bool allow_repl) {
  Globals g;
  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();
  if (const char* env = std::getenv("HYPERCALC_MODE"); env && *env) g.mode = env;
  const std::vector<std::string> modes = {"auto", "exact", "float", "symbolic", "refine"};
  if (std::find(modes.begin(), modes.end(), g.mode) == modes.end())
    return emit_error(json_requested, "usage", "HYPERCALC_MODE must be one of auto, exact, float, symbolic, refine",
                      std::nullopt, "", out, err);

  CLI::App app{"Exact hyperreal arithmetic, sequences, series, jets and hyperfinite integrals", "hypercalc"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_flag("--json", g.json, "Emit JSON output")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--tol", g.tol, "Integration tolerance relative to max(1, |value|)")
      ->check(CLI::PositiveNumber)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--mode", g.mode,
                 "auto, exact or float; symbolic and refine are accepted as integrate aliases for auto and float "
                 "(default from HYPERCALC_MODE)")
      ->check(CLI::IsMember(modes))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--max-depth", g.max_depth, "Jet order cap for lhospital; log2 of the cell cap for integrate")
      ->check(CLI::Range(1u, 40u))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::vector<std::pair<CLI::App*, std::function<Outcome()>>> handlers;
  std::function<int()> repl_handler;

  std::string t1, t2;
  auto* classify = app.add_subcommand("classify", "Tag and sign of a hyper term");
  classify->add_option("term", t1, "Hyper term, e.g. \"eps^2*W\"")->required();
  handlers.emplace_back(classify, [&] { return do_classify(t1, session); });

  auto* st = app.add_subcommand("st", "Standard part of a finite hyper term");
  st->add_option("term", t1, "Hyper term")->required();
  handlers.emplace_back(st, [&] { return do_st(t1, session); });

  auto* cmp = app.add_subcommand("cmp", "Order two hyper terms");
  cmp->add_option("lhs", t1, "Hyper term")->required();
  cmp->add_option("rhs", t2, "Hyper term")->required();
  handlers.emplace_back(cmp, [&] { return do_cmp(t1, t2, session); });

  std::optional<std::string> vs;
  std::optional<std::uint64_t> at_index;
  auto* seq = app.add_subcommand("seq", "Hyperreal class and limit behaviour of a sequence in n");
  seq->add_option("sequence", t1, "Sequence, e.g. \"altsign*(1+1/(n+1))\"")->required();
  seq->add_option("--vs", vs, "Compare against another sequence on a cofinite set");
  seq->add_option("--at", at_index, "Evaluate at one index");
  handlers.emplace_back(seq, [&] { return do_seq(t1, vs, at_index); });

  std::optional<std::string> antidiff;
  auto* series = app.add_subcommand("series", "Convergence of the series of a term in n, from n = 0");
  series->add_option("term", t1, "Term a(n)")->required();
  series->add_option("--antidiff", antidiff, "g(n) with a(n) = g(n+1) - g(n)");
  handlers.emplace_back(series, [&] { return do_series(t1, antidiff); });

  std::string at_point;
  unsigned order = 1;
  auto* deriv = app.add_subcommand("deriv", "Derivative of a function of x at a point");
  deriv->add_option("function", t1, "Function of x")->required();
  deriv->add_option("--at", at_point, "Point (constant expression)")->required();
  deriv->add_option("--order", order, "Derivative order")->check(CLI::Range(1u, 64u));
  handlers.emplace_back(deriv, [&] { return do_deriv(g, t1, at_point, order); });

  auto* lhosp = app.add_subcommand("lhospital", "Limit of f/g at a common zero");
  lhosp->add_option("f", t1, "Numerator function of x")->required();
  lhosp->add_option("g", t2, "Denominator function of x")->required();
  lhosp->add_option("--at", at_point, "Point (constant expression)")->required();
  handlers.emplace_back(lhosp, [&] { return do_lhospital(g, t1, t2, at_point); });

  std::string from = "0", to = "1";
  std::optional<std::string> monotone;
  auto* integ = app.add_subcommand("integrate", "Hyperfinite integral over [from, to]");
  integ->add_option("function", t1, "Function of x")->required();
  integ->add_option("--from", from, "Lower endpoint (constant expression)");
  integ->add_option("--to", to, "Upper endpoint (constant expression)");
  integ->add_option("--monotone", monotone, "Assert monotonicity: increasing or decreasing")
      ->check(CLI::IsMember({"increasing", "decreasing"}));
  handlers.emplace_back(integ, [&] { return do_integrate(g, t1, from, to, monotone); });

  auto* filter = app.add_subcommand("filter", "Filters on a finite universe");
  filter->require_subcommand(1, 1);
  auto* fcheck = filter->add_subcommand("check", "Whether a family is a filter / ultrafilter");
  fcheck->add_option("family", t1, "JSON {\"universe\": k, \"members\": [[...], ...]}")->required();
  handlers.emplace_back(fcheck, [&] { return do_filter_check(t1); });
  unsigned universe = 0;
  std::vector<unsigned> generator;
  auto* fprin = filter->add_subcommand("principal", "Principal filter of a subset");
  fprin->add_option("--universe", universe, "Universe size")->required();
  fprin->add_option("--set", generator, "Generator elements")->required()->delimiter(',');
  handlers.emplace_back(fprin, [&] { return do_filter_principal(universe, generator); });
  auto* fgen = filter->add_subcommand("generate", "Filter generated by a base family");
  fgen->add_option("family", t1, "Base family JSON")->required();
  handlers.emplace_back(fgen, [&] {
    const auto base = family_arg(t1);
    return family_outcome(filters::generate_from_base(base.universe_size(), base));
  });
  auto* fext = filter->add_subcommand("extend", "Extend a filter to an ultrafilter");
  fext->add_option("family", t1, "Filter JSON")->required();
  handlers.emplace_back(fext, [&] { return family_outcome(filters::extend_to_ultrafilter(family_arg(t1))); });

  auto* repl = app.add_subcommand("repl", "Read commands, terms and 'let' bindings from standard input");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return emit_error(json_requested, "usage", e.what(), std::nullopt, "", out, err);
  }

  try {
    if (repl->parsed()) {
      if (!allow_repl) throw Error(ErrorCode::usage, "repl cannot be nested");
      return run_repl(g, in, out, err, session);
    }
    for (auto& [sub, handler] : handlers) {
      if (sub->parsed()) {
        emit(g, handler(), out);
        return 0;
      }
    }
    throw Error(ErrorCode::usage, "no subcommand given");
  } catch (const InputError& e) {
    return emit_error(g.json, error_code_name(e.code()), e.what(), e.span(), e.source(), out, err);
  } catch (const Error& e) {
    return emit_error(g.json, error_code_name(e.code()), e.what(), std::nullopt, "", out, err);
  } catch (const std::bad_alloc&) {
    return emit_error(g.json, "resource", "out of memory", std::nullopt, "", out, err);
  } catch (const std::exception& e) {
    return emit_error(g.json, "internal", e.what(), std::nullopt, "", out, err);
  }
}

}  // namespace

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool have = false;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote) quote = 0;
      else cur += c;
    } else if (c == '"' || c == '\'') {
      quote = c;
      have = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (quote) throw Error(ErrorCode::syntax, "unterminated quote");
  if (have) out.push_back(cur);
  if (out.empty()) throw Error(ErrorCode::syntax, "empty line");
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Session session;
  return execute(args, in, out, err, session, true);
}

}  // namespace hypercalc::cli
