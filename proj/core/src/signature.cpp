#include "tptpnc/signature.hpp"

#include <algorithm>

#include "tptpnc/detail/overloaded.hpp"
#include "tptpnc/diagnostics.hpp"
#include "tptpnc/printer.hpp"

namespace tptpnc {

using detail::overloaded;

namespace {

[[noreturn]] void type_error(const std::string& message) { throw EmbedError(ErrorKind::TypeError, {}, message); }

TypePtr bool_type() {
  static const TypePtr t = make_base_type(types::kBool);
  return t;
}
TypePtr individual_type() {
  static const TypePtr t = make_base_type(types::kIndividual);
  return t;
}

bool is_defined(const std::string& symbol) { return !symbol.empty() && symbol[0] == '$'; }

bool is_comparison(const std::string& s) {
  return s == "$less" || s == "$lesseq" || s == "$greater" || s == "$greatereq" || s == "$is_int" || s == "$is_rat";
}

bool is_arithmetic(const std::string& s) {
  static const std::set<std::string> ops = {"$sum",       "$difference", "$product",    "$quotient",
                                            "$quotient_e", "$quotient_t", "$quotient_f", "$remainder_e",
                                            "$remainder_t", "$remainder_f", "$uminus",    "$floor",
                                            "$ceiling",    "$truncate",   "$round"};
  return ops.count(s) > 0;
}

TypePtr default_type(std::size_t arity, bool predicate) {
  std::vector<TypePtr> args(arity, individual_type());
  return make_curried_type(args, predicate ? bool_type() : individual_type());
}

// Default typing pass over first-order units.
class DefaultTyper {
 public:
  explicit DefaultTyper(Signature& sig) : sig_(sig) {}

  void formula(const FormulaPtr& f) {
    std::visit(overloaded{
                   [&](const AtomFormula& a) { application(a.symbol, a.args, true); },
                   [&](const EqualityFormula& e) {
                     term(e.lhs, nullptr);
                     term(e.rhs, nullptr);
                   },
                   [&](const NotFormula& n) { formula(n.operand); },
                   [&](const BinaryFormula& b) {
                     formula(b.lhs);
                     formula(b.rhs);
                   },
                   [&](const QuantifiedFormula& q) { formula(q.body); },
                   [&](const NcApplyFormula& n) {
                     for (const auto& a : n.args) term(a, bool_type());
                   },
                   [&](const ConditionalFormula& c) {
                     formula(c.condition);
                     term(c.then_branch, nullptr);
                     term(c.else_branch, nullptr);
                   },
                   [](const auto&) {},
               },
               f->node);
  }

  void term(const TermPtr& t, const TypePtr& expected) {
    std::visit(overloaded{
                   [&](const FunctionTerm& fn) {
                     bool as_formula = expected && is_base(expected, types::kBool);
                     application(fn.symbol, fn.args, as_formula);
                   },
                   [&](const FormulaTerm& ft) { formula(ft.formula); },
                   [&](const TupleTerm& tu) {
                     for (const auto& e : tu.elements) term(e, nullptr);
                   },
                   [](const auto&) {},
               },
               t->node);
  }

 private:
  Signature& sig_;

  void application(const std::string& symbol, const std::vector<TermPtr>& args, bool predicate) {
    std::vector<TypePtr> expected;
    if (const TypePtr* declared = sig_.find(symbol)) {
      expected = argument_types(*declared);
    } else if (!is_defined(symbol)) {
      sig_.add(symbol, default_type(args.size(), predicate), true);
      expected.assign(args.size(), individual_type());
    } else if (predicate || is_comparison(symbol) || is_arithmetic(symbol)) {
      expected.clear();
    }
    for (std::size_t i = 0; i < args.size(); ++i) term(args[i], i < expected.size() ? expected[i] : nullptr);
  }
};

}  // namespace

const TypePtr* Signature::find(const std::string& symbol) const {
  auto it = types.find(symbol);
  return it == types.end() ? nullptr : &it->second;
}

void Signature::add(const std::string& symbol, const TypePtr& type, bool by_default) {
  TypePtr canonical = curry_all(type);
  if (const TypePtr* existing = find(symbol)) {
    if (!same_type(*existing, canonical))
      type_error("symbol '" + symbol + "' used with type " + print_type(canonical, Language::Thf) +
                 " but already has type " + print_type(*existing, Language::Thf));
    return;
  }
  types.emplace(symbol, canonical);
  order.push_back(symbol);
  if (by_default) defaulted.insert(symbol);
}

bool Signature::is_sort(const std::string& name) const {
  return std::find(sorts.begin(), sorts.end(), name) != sorts.end();
}

bool same_type(const TypePtr& a, const TypePtr& b) { return deep_equal(curry_all(a), curry_all(b)); }

TypePtr number_type(NumberKind kind) {
  switch (kind) {
    case NumberKind::Integer: return make_base_type(types::kInt);
    case NumberKind::Rational: return make_base_type(types::kRat);
    case NumberKind::Real: return make_base_type(types::kReal);
  }
  return make_base_type(types::kInt);
}

bool is_defined_type(const std::string& name) {
  return name == types::kBool || name == types::kIndividual || name == types::kInt || name == types::kRat ||
         name == types::kReal || name == types::kType;
}

TypePtr apply_type(const TypePtr& fn, std::size_t n) {
  FunctionShape shape = uncurry(fn);
  if (n > shape.args.size()) return nullptr;
  std::vector<TypePtr> rest(shape.args.begin() + static_cast<std::ptrdiff_t>(n), shape.args.end());
  return curry_all(make_curried_type(rest, shape.result));
}

std::vector<TypePtr> argument_types(const TypePtr& fn) { return uncurry(fn).args; }

TypePtr final_result_type(const TypePtr& fn) { return uncurry(fn).result; }

Signature build_signature(const Problem& problem) {
  Signature sig;
  for (const auto& u : problem) {
    const TypeDecl* d = u.type_decl();
    if (!d) continue;
    if (is_base(d->type, types::kType)) {
      if (!sig.is_sort(d->symbol)) sig.sorts.push_back(d->symbol);
    } else {
      sig.add(d->symbol, d->type);
    }
  }
  DefaultTyper typer(sig);
  for (const auto& u : problem) {
    if (u.language == Language::Thf) continue;
    if (const FormulaPtr* f = u.formula()) typer.formula(*f);
  }
  return sig;
}

// ---------------------------------------------------------------------------

Typer::Env Typer::bind(const Env& env, const std::vector<Binding>& bindings) {
  Env out = env;
  for (const auto& b : bindings) out[b.name] = b.type ? curry_all(b.type) : individual_type();
  return out;
}

TypePtr Typer::apply_to(const TypePtr& fn, const std::vector<TermPtr>& args, const Env& env,
                        const std::string& what) const {
  std::vector<TypePtr> expected = argument_types(fn);
  if (args.size() > expected.size())
    type_error("'" + what + "' of type " + print_type(fn, Language::Thf) + " applied to " +
               std::to_string(args.size()) + " arguments");
  for (std::size_t i = 0; i < args.size(); ++i) {
    TypePtr actual = term_type(args[i], env);
    if (!same_type(actual, expected[i]))
      type_error("argument " + std::to_string(i + 1) + " of '" + what + "' has type " +
                 print_type(actual, Language::Thf) + ", expected " + print_type(expected[i], Language::Thf));
  }
  return apply_type(fn, args.size());
}

TypePtr Typer::symbol_application(const std::string& symbol, const std::vector<TermPtr>& args,
                                  const Env& env) const {
  if (const TypePtr* t = sig_->find(symbol)) return apply_to(*t, args, env, symbol);
  if (is_comparison(symbol) || is_arithmetic(symbol)) {
    if (args.empty()) type_error("'" + symbol + "' needs arguments");
    TypePtr first = term_type(args[0], env);
    for (std::size_t i = 1; i < args.size(); ++i)
      if (!same_type(term_type(args[i], env), first)) type_error("mixed argument types for '" + symbol + "'");
    return is_comparison(symbol) ? bool_type() : first;
  }
  type_error("undeclared symbol '" + symbol + "'");
}

TypePtr Typer::term_type(const TermPtr& t, const Env& env) const {
  return std::visit(overloaded{
                        [&](const VariableTerm& v) -> TypePtr {
                          auto it = env.find(v.name);
                          if (it == env.end()) type_error("unbound variable '" + v.name + "'");
                          return it->second;
                        },
                        [&](const FunctionTerm& fn) { return symbol_application(fn.symbol, fn.args, env); },
                        [](const NumberTerm& n) { return number_type(n.kind); },
                        [](const DistinctObjectTerm&) { return individual_type(); },
                        [&](const FormulaTerm& ft) { return formula_type(ft.formula, env); },
                        [](const TupleTerm&) -> TypePtr { type_error("tuples have no type here"); },
                    },
                    t->node);
}

TypePtr Typer::formula_type(const FormulaPtr& f, const Env& env) const {
  auto expect_bool = [&](const FormulaPtr& g, const Env& e) {
    TypePtr t = formula_type(g, e);
    if (!is_base(t, types::kBool))
      type_error("'" + print_formula(g, Language::Thf) + "' has type " + print_type(t, Language::Thf) +
                 " where $o is expected");
  };
  return std::visit(
      overloaded{
          [&](const AtomFormula& a) { return symbol_application(a.symbol, a.args, env); },
          [&](const VariableFormula& v) -> TypePtr {
            auto it = env.find(v.name);
            if (it == env.end()) type_error("unbound variable '" + v.name + "'");
            return it->second;
          },
          [&](const EqualityFormula& e) {
            TypePtr l = term_type(e.lhs, env);
            TypePtr r = term_type(e.rhs, env);
            if (!same_type(l, r))
              type_error("equality between " + print_type(l, Language::Thf) + " and " + print_type(r, Language::Thf));
            return bool_type();
          },
          [&](const NotFormula& n) {
            expect_bool(n.operand, env);
            return bool_type();
          },
          [&](const BinaryFormula& b) {
            expect_bool(b.lhs, env);
            expect_bool(b.rhs, env);
            return bool_type();
          },
          [&](const QuantifiedFormula& q) {
            expect_bool(q.body, bind(env, q.bindings));
            return bool_type();
          },
          [&](const LambdaFormula& l) {
            Env inner = bind(env, l.bindings);
            std::vector<TypePtr> args;
            for (const auto& b : l.bindings) args.push_back(inner.at(b.name));
            return curry_all(make_curried_type(args, formula_type(l.body, inner)));
          },
          [&](const ApplyFormula& a) {
            ApplicationSpine spine = application_spine(f);
            if (auto* atom = std::get_if<AtomFormula>(&spine.head->node)) {
              std::vector<TermPtr> all = atom->args;
              all.insert(all.end(), spine.args.begin(), spine.args.end());
              return symbol_application(atom->symbol, all, env);
            }
            TypePtr head = formula_type(a.head, env);
            return apply_to(head, {a.arg}, env, print_formula(a.head, Language::Thf));
          },
          [&](const NcApplyFormula& n) {
            for (const auto& arg : n.args) {
              TypePtr t = term_type(arg, env);
              if (!is_base(t, types::kBool)) type_error("argument of a modal connective must have type $o");
            }
            return bool_type();
          },
          [&](const ConditionalFormula& c) {
            expect_bool(c.condition, env);
            TypePtr t = term_type(c.then_branch, env);
            if (!same_type(t, term_type(c.else_branch, env))) type_error("$ite branches differ in type");
            return t;
          },
          [&](const LetFormula&) -> TypePtr {
            throw EmbedError(ErrorKind::UnsupportedConstruct, {}, "$let is not supported");
          },
          [](const BoolConstFormula&) { return bool_type(); },
      },
      f->node);
}

void Typer::check_formula(const FormulaPtr& f, const Env& env) const {
  TypePtr t = formula_type(f, env);
  if (!is_base(t, types::kBool)) type_error("formula has type " + print_type(t, Language::Thf) + ", expected $o");
}

void type_check(const Problem& problem) {
  Signature sig = build_signature(problem);
  Typer typer(sig);
  for (const auto& u : problem) {
    const FormulaPtr* f = u.formula();
    if (!f) continue;
    try {
      typer.check_formula(*f);
    } catch (const EmbedError& e) {
      throw EmbedError(e.kind(), u.pos, "in '" + u.name + "': " + e.message());
    }
  }
}

}  // namespace tptpnc
