#include "tptpnc/embedding.hpp"

#include <algorithm>
#include <sstream>

#include "tptpnc/detail/overloaded.hpp"
#include "tptpnc/diagnostics.hpp"
#include "tptpnc/printer.hpp"

namespace tptpnc {

using detail::overloaded;

namespace {

TypePtr world_type() {
  static const TypePtr t = make_base_type(kWorldType);
  return t;
}
TypePtr bool_type() {
  static const TypePtr t = make_base_type(types::kBool);
  return t;
}

bool is_defined(const std::string& s) { return !s.empty() && s[0] == '$'; }

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    out += ok ? c : '_';
  }
  while (!out.empty() && out.front() == '_') out.erase(out.begin());
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string unit_name(std::string_view raw) {
  std::string s = sanitize(raw);
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) s = "u" + s;
  return s;
}

[[noreturn]] void unsupported(const std::string& what) {
  throw EmbedError(ErrorKind::UnsupportedConstruct, {}, what);
}

FormulaPtr apply_symbol(const std::string& head, std::vector<TermPtr> args) {
  if (args.empty()) return make_atom(head);
  return make_apply(make_atom(head), args);
}

TermPtr var(const std::string& name) { return make_variable_term(name); }

Binding world_binding(const std::string& name) { return Binding{name, world_type()}; }

FormulaPtr conj(std::vector<FormulaPtr> fs) {
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = make_binary(BinaryOp::And, out, fs[i]);
  return out;
}

AnnotatedFormula make_unit(std::string name, RoleBase role, Payload payload, Language lang = Language::Thf) {
  AnnotatedFormula u;
  u.language = lang;
  u.name = std::move(name);
  u.role.base = role;
  u.payload = std::move(payload);
  return u;
}

AnnotatedFormula type_unit(std::string name, const std::string& symbol, TypePtr type,
                           Language lang = Language::Thf) {
  return make_unit(std::move(name), RoleBase::Type, TypeDecl{symbol, std::move(type)}, lang);
}

// ---------------------------------------------------------------------------
// Beta normalization

void collect_names(const FormulaPtr& f, std::set<std::string>& out);

void collect_names(const TermPtr& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const VariableTerm& v) { out.insert(v.name); },
                 [&](const FunctionTerm& fn) {
                   for (const auto& a : fn.args) collect_names(a, out);
                 },
                 [&](const FormulaTerm& ft) { collect_names(ft.formula, out); },
                 [&](const TupleTerm& tu) {
                   for (const auto& e : tu.elements) collect_names(e, out);
                 },
                 [](const auto&) {},
             },
             t->node);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  auto terms = [&](const std::vector<TermPtr>& ts) {
    for (const auto& t : ts) collect_names(t, out);
  };
  std::visit(overloaded{
                 [&](const AtomFormula& a) { terms(a.args); },
                 [&](const EqualityFormula& e) {
                   collect_names(e.lhs, out);
                   collect_names(e.rhs, out);
                 },
                 [&](const NotFormula& n) { collect_names(n.operand, out); },
                 [&](const BinaryFormula& b) {
                   collect_names(b.lhs, out);
                   collect_names(b.rhs, out);
                 },
                 [&](const QuantifiedFormula& q) {
                   for (const auto& b : q.bindings) out.insert(b.name);
                   collect_names(q.body, out);
                 },
                 [&](const LambdaFormula& l) {
                   for (const auto& b : l.bindings) out.insert(b.name);
                   collect_names(l.body, out);
                 },
                 [&](const ApplyFormula& a) {
                   collect_names(a.head, out);
                   collect_names(a.arg, out);
                 },
                 [&](const NcApplyFormula& n) { terms(n.args); },
                 [&](const ConditionalFormula& c) {
                   collect_names(c.condition, out);
                   collect_names(c.then_branch, out);
                   collect_names(c.else_branch, out);
                 },
                 [&](const LetFormula& l) { collect_names(l.body, out); },
                 [&](const VariableFormula& v) { out.insert(v.name); },
                 [](const BoolConstFormula&) {},
             },
             f->node);
}

FormulaPtr subst(const FormulaPtr& f, const std::string& x, const TermPtr& r);

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& r) {
  return std::visit(overloaded{
                        [&](const VariableTerm& v) { return v.name == x ? r : t; },
                        [&](const FunctionTerm& fn) {
                          std::vector<TermPtr> args;
                          for (const auto& a : fn.args) args.push_back(subst(a, x, r));
                          return make_function_term(fn.symbol, std::move(args));
                        },
                        [&](const FormulaTerm& ft) { return to_term(subst(ft.formula, x, r)); },
                        [&](const TupleTerm& tu) {
                          std::vector<TermPtr> es;
                          for (const auto& e : tu.elements) es.push_back(subst(e, x, r));
                          return make_tuple_term(std::move(es));
                        },
                        [&](const auto&) { return t; },
                    },
                    t->node);
}

// Renames binders that would capture free variables of `r`, then substitutes.
template <typename Make>
FormulaPtr subst_binder(const std::vector<Binding>& bindings, const FormulaPtr& body, const std::string& x,
                        const TermPtr& r, Make make) {
  for (const auto& b : bindings)
    if (b.name == x) return make(bindings, body);
  std::set<std::string> free = free_variables(r);
  std::vector<Binding> renamed = bindings;
  FormulaPtr new_body = body;
  for (auto& b : renamed) {
    if (!free.count(b.name)) continue;
    std::set<std::string> used = free;
    collect_names(body, used);
    std::string fresh;
    for (int i = 1;; ++i) {
      fresh = b.name + "_" + std::to_string(i);
      if (!used.count(fresh)) break;
    }
    new_body = subst(new_body, b.name, var(fresh));
    b.name = fresh;
  }
  return make(renamed, subst(new_body, x, r));
}

FormulaPtr subst(const FormulaPtr& f, const std::string& x, const TermPtr& r) {
  auto terms = [&](const std::vector<TermPtr>& ts) {
    std::vector<TermPtr> out;
    for (const auto& t : ts) out.push_back(subst(t, x, r));
    return out;
  };
  return std::visit(
      overloaded{
          [&](const AtomFormula& a) { return make_atom(a.symbol, terms(a.args)); },
          [&](const EqualityFormula& e) { return make_equality(subst(e.lhs, x, r), subst(e.rhs, x, r), e.negated); },
          [&](const NotFormula& n) { return make_not(subst(n.operand, x, r)); },
          [&](const BinaryFormula& b) { return make_binary(b.op, subst(b.lhs, x, r), subst(b.rhs, x, r)); },
          [&](const QuantifiedFormula& q) {
            return subst_binder(q.bindings, q.body, x, r, [&](std::vector<Binding> bs, FormulaPtr body) {
              return make_quantified(q.quantifier, std::move(bs), std::move(body));
            });
          },
          [&](const LambdaFormula& l) {
            return subst_binder(l.bindings, l.body, x, r,
                                [](std::vector<Binding> bs, FormulaPtr body) { return make_lambda(std::move(bs), std::move(body)); });
          },
          [&](const ApplyFormula& a) { return make_apply(subst(a.head, x, r), subst(a.arg, x, r)); },
          [&](const NcApplyFormula& n) { return make_nc_apply(n.conn, terms(n.args), n.pos); },
          [&](const ConditionalFormula& c) {
            return make_conditional(subst(c.condition, x, r), subst(c.then_branch, x, r), subst(c.else_branch, x, r));
          },
          [&](const VariableFormula& v) -> FormulaPtr {
            if (v.name != x) return f;
            FormulaPtr g = to_formula(r);
            if (!g) throw EmbedError(ErrorKind::TypeError, {}, "non-Boolean value substituted in formula position");
            return g;
          },
          [&](const auto&) { return f; },
      },
      f->node);
}

}  // namespace

FormulaPtr beta_normalize(const FormulaPtr& f) {
  auto terms = [](const std::vector<TermPtr>& ts) {
    std::vector<TermPtr> out;
    for (const auto& t : ts) out.push_back(beta_normalize(t));
    return out;
  };
  return std::visit(
      overloaded{
          [&](const AtomFormula& a) { return make_atom(a.symbol, terms(a.args)); },
          [&](const EqualityFormula& e) {
            return make_equality(beta_normalize(e.lhs), beta_normalize(e.rhs), e.negated);
          },
          [&](const NotFormula& n) { return make_not(beta_normalize(n.operand)); },
          [&](const BinaryFormula& b) { return make_binary(b.op, beta_normalize(b.lhs), beta_normalize(b.rhs)); },
          [&](const QuantifiedFormula& q) { return make_quantified(q.quantifier, q.bindings, beta_normalize(q.body)); },
          [&](const LambdaFormula& l) { return make_lambda(l.bindings, beta_normalize(l.body)); },
          [&](const ApplyFormula& a) -> FormulaPtr {
            FormulaPtr head = beta_normalize(a.head);
            TermPtr arg = beta_normalize(a.arg);
            auto* lam = std::get_if<LambdaFormula>(&head->node);
            if (!lam) {
              // A substituted head may have become an atom with arguments.
              return make_apply(head, arg);
            }
            FormulaPtr body = subst(lam->body, lam->bindings.front().name, arg);
            if (lam->bindings.size() > 1)
              body = make_lambda(std::vector<Binding>(lam->bindings.begin() + 1, lam->bindings.end()), body);
            return beta_normalize(body);
          },
          [&](const NcApplyFormula& n) { return make_nc_apply(n.conn, terms(n.args), n.pos); },
          [&](const ConditionalFormula& c) {
            return make_conditional(beta_normalize(c.condition), beta_normalize(c.then_branch),
                                    beta_normalize(c.else_branch));
          },
          [&](const auto&) { return f; },
      },
      f->node);
}

TermPtr beta_normalize(const TermPtr& t) {
  return std::visit(overloaded{
                        [&](const FunctionTerm& fn) {
                          std::vector<TermPtr> args;
                          for (const auto& a : fn.args) args.push_back(beta_normalize(a));
                          return make_function_term(fn.symbol, std::move(args));
                        },
                        [&](const FormulaTerm& ft) { return to_term(beta_normalize(ft.formula)); },
                        [&](const TupleTerm& tu) {
                          std::vector<TermPtr> es;
                          for (const auto& e : tu.elements) es.push_back(beta_normalize(e));
                          return make_tuple_term(std::move(es));
                        },
                        [&](const auto&) { return t; },
                    },
                    t->node);
}

// ---------------------------------------------------------------------------
// Names and types

std::string relation_name(const std::string& index_key) {
  if (index_key.empty()) return "mrel";
  std::string s = sanitize(index_key);
  return s.empty() ? "mrel_x" : "mrel_" + s;
}

std::string existence_name(const std::string& type_name) { return "meexists_" + sanitize(type_name); }

std::string lifted_symbol_name(const std::string& symbol) {
  if (symbol.size() >= 2 && symbol.front() == '\'' && symbol.back() == '\'')
    return symbol.substr(0, symbol.size() - 1) + "_at'";
  return symbol + "_at";
}

TypePtr lift_type(const TypePtr& t) {
  TypePtr c = curry_all(t);
  if (auto* base = as_base(c)) {
    if (base->name == types::kBool) return make_curried_type(world_type(), bool_type());
    return c;
  }
  const auto& cur = std::get<CurriedType>(c->node);
  return make_curried_type(lift_type(cur.arg), lift_type(cur.result));
}

LiftedSymbol lift_symbol(const std::string& symbol, const TypePtr& type, const ModalSemantics& sem) {
  TypePtr t = curry_all(type);
  FunctionShape shape = uncurry(t);
  if (is_base(shape.result, types::kType))
    throw EmbedError(ErrorKind::UnsupportedConstruct, {}, "type constructor '" + symbol + "' cannot be embedded");
  if (is_base(shape.result, types::kBool)) return {lifted_symbol_name(symbol), lift_type(t), true};
  if (sem.rigidity(symbol) == Rigidity::Flexible)
    return {lifted_symbol_name(symbol), make_curried_type(world_type(), lift_type(t)), true};
  return {symbol, lift_type(t), false};
}

// ---------------------------------------------------------------------------
// Embedder

Embedder::Embedder(const Signature& sig, const ModalSemantics& sem, std::string world_var_prefix)
    : sig_(&sig), sem_(&sem), typer_(sig), prefix_(std::move(world_var_prefix)) {}

FormulaPtr Embedder::at(const FormulaPtr& f, const TermPtr& world, const Typer::Env& env) const {
  return at(f, world, env, 0);
}

FormulaPtr Embedder::lifted(const FormulaPtr& f) const {
  std::string w = world_var(0);
  return make_lambda({world_binding(w)}, at(f, var(w), {}, 0));
}

std::vector<Binding> Embedder::lift_bindings(const std::vector<Binding>& bindings) const {
  std::vector<Binding> out;
  for (const auto& b : bindings)
    out.push_back(Binding{b.name, lift_type(b.type ? b.type : make_base_type(types::kIndividual))});
  return out;
}

FormulaPtr Embedder::lift_application(const FormulaPtr& f, const TermPtr& world, const Typer::Env& env,
                                      int depth) const {
  ApplicationSpine spine = application_spine(f);
  auto lift_args = [&](const std::vector<TermPtr>& args, const std::vector<TypePtr>& types) {
    std::vector<TermPtr> out;
    for (std::size_t i = 0; i < args.size(); ++i) out.push_back(lift_term(args[i], types.at(i), world, env, depth));
    return out;
  };
  if (auto* atom = std::get_if<AtomFormula>(&spine.head->node)) {
    std::vector<TermPtr> args = atom->args;
    args.insert(args.end(), spine.args.begin(), spine.args.end());
    if (const TypePtr* t = sig_->find(atom->symbol)) {
      std::vector<TypePtr> arg_types = argument_types(*t);
      if (args.size() > arg_types.size())
        throw EmbedError(ErrorKind::TypeError, {}, "too many arguments for '" + atom->symbol + "'");
      LiftedSymbol ls = lift_symbol(atom->symbol, *t, *sem_);
      std::vector<TermPtr> lifted;
      if (ls.world_dependent && !is_base(final_result_type(*t), types::kBool)) lifted.push_back(world);
      for (auto& a : lift_args(args, arg_types)) lifted.push_back(std::move(a));
      return apply_symbol(ls.name, std::move(lifted));
    }
    if (is_defined(atom->symbol)) {
      std::vector<TypePtr> arg_types;
      for (const auto& a : args) arg_types.push_back(typer_.term_type(a, env));
      return apply_symbol(atom->symbol, lift_args(args, arg_types));
    }
    throw EmbedError(ErrorKind::TypeError, {}, "undeclared symbol '" + atom->symbol + "'");
  }
  if (auto* v = std::get_if<VariableFormula>(&spine.head->node)) {
    auto it = env.find(v->name);
    if (it == env.end()) throw EmbedError(ErrorKind::TypeError, {}, "unbound variable '" + v->name + "'");
    FormulaPtr head = make_variable_formula(v->name);
    if (spine.args.empty()) return head;
    return make_apply(head, lift_args(spine.args, argument_types(it->second)));
  }
  if (std::holds_alternative<ConditionalFormula>(spine.head->node) || std::holds_alternative<LetFormula>(spine.head->node))
    unsupported("$ite and $let cannot be embedded");
  throw EmbedError(ErrorKind::InternalError, {}, "unexpected application head in '" + print_formula(f, Language::Thf) + "'");
}

TermPtr Embedder::lift_term(const TermPtr& t, const TypePtr& type, const TermPtr& world, const Typer::Env& env,
                            int depth) const {
  if (std::holds_alternative<NumberTerm>(t->node) || std::holds_alternative<DistinctObjectTerm>(t->node)) return t;
  if (std::holds_alternative<TupleTerm>(t->node)) unsupported("tuples cannot be embedded");
  FormulaPtr phi = to_formula(t);
  TypePtr ty = curry_all(type);

  if (is_base(ty, types::kBool)) {
    if (std::holds_alternative<VariableFormula>(phi->node)) return t;
    std::string w = world_var(depth + 1);
    FormulaPtr body = at(phi, var(w), env, depth + 1);
    if (auto* app = std::get_if<ApplyFormula>(&body->node)) {
      auto* arg = std::get_if<VariableTerm>(&app->arg->node);
      if (arg && arg->name == w && !free_variables(app->head).count(w)) return to_term(app->head);
    }
    return make_formula_term(make_lambda({world_binding(w)}, body));
  }
  if (std::holds_alternative<CurriedType>(ty->node)) {
    if (auto* lam = std::get_if<LambdaFormula>(&phi->node)) {
      Typer::Env inner = Typer::bind(env, lam->bindings);
      TypePtr rest = apply_type(ty, lam->bindings.size());
      if (!rest) throw EmbedError(ErrorKind::TypeError, {}, "lambda has too many binders for its type");
      std::vector<Binding> bindings = lift_bindings(lam->bindings);
      FormulaPtr body = to_formula(lift_term(to_term(lam->body), rest, world, inner, depth));
      if (auto* nested = std::get_if<LambdaFormula>(&body->node)) {
        bindings.insert(bindings.end(), nested->bindings.begin(), nested->bindings.end());
        body = nested->body;
      }
      return make_formula_term(make_lambda(std::move(bindings), body));
    }
  }
  if (std::holds_alternative<VariableFormula>(phi->node)) return t;
  return to_term(lift_application(phi, world, env, depth));
}

FormulaPtr Embedder::at(const FormulaPtr& f, const TermPtr& world, const Typer::Env& env, int depth) const {
  auto application = [&]() -> FormulaPtr {
    ApplicationSpine spine = application_spine(f);
    if (auto* atom = std::get_if<AtomFormula>(&spine.head->node); atom && is_defined(atom->symbol) && !sig_->find(atom->symbol))
      return lift_application(f, world, env, depth);
    return make_apply(lift_application(f, world, env, depth), world);
  };
  return std::visit(
      overloaded{
          [&](const AtomFormula&) { return application(); },
          [&](const ApplyFormula&) { return application(); },
          [&](const VariableFormula&) { return application(); },
          [&](const BoolConstFormula&) { return f; },
          [&](const EqualityFormula& e) -> FormulaPtr {
            TypePtr t = typer_.term_type(e.lhs, env);
            if (is_base(t, types::kBool)) {
              FormulaPtr l = at(to_formula(e.lhs), world, env, depth);
              FormulaPtr r = at(to_formula(e.rhs), world, env, depth);
              return make_binary(e.negated ? BinaryOp::Xor : BinaryOp::Iff, l, r);
            }
            return make_equality(lift_term(e.lhs, t, world, env, depth), lift_term(e.rhs, t, world, env, depth),
                                 e.negated);
          },
          [&](const NotFormula& n) { return make_not(at(n.operand, world, env, depth)); },
          [&](const BinaryFormula& b) {
            return make_binary(b.op, at(b.lhs, world, env, depth), at(b.rhs, world, env, depth));
          },
          [&](const QuantifiedFormula& q) {
            Typer::Env inner = Typer::bind(env, q.bindings);
            FormulaPtr body = at(q.body, world, inner, depth);
            std::vector<FormulaPtr> guards;
            for (const auto& b : q.bindings) {
              const BaseType* base = as_base(inner.at(b.name));
              if (!base || base->name == types::kBool) continue;
              if (sem_->domain(base->name) == DomainKind::Constant) continue;
              guards.push_back(apply_symbol(existence_name(base->name), {world, var(b.name)}));
            }
            if (!guards.empty())
              body = make_binary(q.quantifier == Quantifier::Forall ? BinaryOp::Implies : BinaryOp::And, conj(guards),
                                 body);
            return make_quantified(q.quantifier, lift_bindings(q.bindings), body);
          },
          [&](const NcApplyFormula& n) -> FormulaPtr {
            ConnectiveKind kind = classify_connective(n.conn, sem_->family, n.pos);
            if (kind == ConnectiveKind::Unsupported)
              throw EmbedError(ErrorKind::UnsupportedConstruct, n.pos,
                               "connective " + print_connective(n.conn) + " cannot be embedded");
            if (!n.conn.params.empty())
              throw EmbedError(ErrorKind::UnsupportedConstruct, n.pos, "key-value parameters cannot be embedded");
            if (n.args.size() != 1)
              throw EmbedError(ErrorKind::UnsupportedConstruct, n.pos,
                               "connective applied to " + std::to_string(n.args.size()) + " arguments");
            FormulaPtr arg = to_formula(n.args[0]);
            if (!arg) throw EmbedError(ErrorKind::TypeError, n.pos, "argument of a modal connective must be a formula");
            std::string v = world_var(depth + 1);
            FormulaPtr rel = apply_symbol(relation_name(index_key(n.conn.index)), {world, var(v)});
            FormulaPtr body = at(arg, var(v), env, depth + 1);
            if (kind == ConnectiveKind::Box)
              return make_quantified(Quantifier::Forall, {world_binding(v)}, make_binary(BinaryOp::Implies, rel, body));
            return make_quantified(Quantifier::Exists, {world_binding(v)}, make_binary(BinaryOp::And, rel, body));
          },
          [&](const LambdaFormula&) -> FormulaPtr {
            throw EmbedError(ErrorKind::TypeError, {}, "lambda abstraction in formula position");
          },
          [&](const ConditionalFormula&) -> FormulaPtr { unsupported("$ite cannot be embedded"); },
          [&](const LetFormula&) -> FormulaPtr { unsupported("$let cannot be embedded"); },
      },
      f->node);
}

FormulaPtr embed_formula(const FormulaPtr& f, const Signature& sig, const ModalSemantics& sem) {
  return Embedder(sig, sem).lifted(beta_normalize(f));
}

// ---------------------------------------------------------------------------
// Frame and domain axioms

FormulaPtr frame_condition_formula(const std::string& rel, FrameCondition c, Language dialect) {
  auto R = [&](const char* a, const char* b) {
    if (dialect == Language::Thf) return apply_symbol(rel, {var(a), var(b)});
    return make_atom(rel, {var(a), var(b)});
  };
  auto all = [](std::vector<const char*> names, FormulaPtr body) {
    std::vector<Binding> bs;
    for (const char* n : names) bs.push_back(world_binding(n));
    return make_quantified(Quantifier::Forall, std::move(bs), std::move(body));
  };
  auto some = [](const char* name, FormulaPtr body) {
    return make_quantified(Quantifier::Exists, {world_binding(name)}, std::move(body));
  };
  auto imp = [](FormulaPtr a, FormulaPtr b) { return make_binary(BinaryOp::Implies, std::move(a), std::move(b)); };
  auto land = [](FormulaPtr a, FormulaPtr b) { return make_binary(BinaryOp::And, std::move(a), std::move(b)); };
  switch (c) {
    case FrameCondition::Reflexive: return all({"W"}, R("W", "W"));
    case FrameCondition::Symmetric: return all({"W", "V"}, imp(R("W", "V"), R("V", "W")));
    case FrameCondition::Serial: return all({"W"}, some("V", R("W", "V")));
    case FrameCondition::Transitive: return all({"W", "V", "U"}, imp(land(R("W", "V"), R("V", "U")), R("W", "U")));
    case FrameCondition::Euclidean: return all({"W", "V", "U"}, imp(land(R("W", "V"), R("W", "U")), R("V", "U")));
    case FrameCondition::Functional:
      return all({"W", "V", "U"}, imp(land(R("W", "V"), R("W", "U")), make_equality(var("V"), var("U"))));
    case FrameCondition::ShiftReflexive: return all({"W", "V"}, imp(R("W", "V"), R("V", "V")));
    case FrameCondition::Dense: return all({"W", "V"}, imp(R("W", "V"), some("U", land(R("W", "U"), R("U", "V")))));
    case FrameCondition::Confluent:
      return all({"W", "V", "U"}, imp(land(R("W", "V"), R("W", "U")), some("X", land(R("V", "X"), R("U", "X")))));
    case FrameCondition::Universal: return all({"W", "V"}, R("W", "V"));
  }
  return make_bool(true);
}

std::vector<AnnotatedFormula> frame_axioms(const std::string& rel, const std::set<FrameCondition>& conditions,
                                           Language dialect) {
  std::vector<AnnotatedFormula> out;
  for (FrameCondition c : conditions)
    out.push_back(make_unit(rel + "_" + std::string(frame_condition_name(c)), RoleBase::Axiom,
                            frame_condition_formula(rel, c, dialect), dialect));
  return out;
}

std::vector<AnnotatedFormula> domain_axioms(const ModalSemantics& sem, const std::vector<std::string>& types,
                                            const std::vector<std::string>& relations) {
  std::vector<AnnotatedFormula> out;
  for (const auto& type : types) {
    DomainKind kind = sem.domain(type);
    if (kind == DomainKind::Constant) continue;
    std::string e = existence_name(type);
    TypePtr ty = make_base_type(type);
    out.push_back(make_unit(e + "_nonempty", RoleBase::Axiom,
                            make_quantified(Quantifier::Forall, {world_binding("W")},
                                            make_quantified(Quantifier::Exists, {Binding{"X", ty}},
                                                            apply_symbol(e, {var("W"), var("X")})))));
    if (kind == DomainKind::Varying) continue;
    bool cumulative = kind == DomainKind::Cumulative;
    for (const auto& rel : relations) {
      FormulaPtr premise = make_binary(BinaryOp::And, apply_symbol(rel, {var("W"), var("V")}),
                                       apply_symbol(e, {var(cumulative ? "W" : "V"), var("X")}));
      FormulaPtr body = make_binary(BinaryOp::Implies, premise, apply_symbol(e, {var(cumulative ? "V" : "W"), var("X")}));
      out.push_back(make_unit(e + "_" + rel + (cumulative ? "_cumulative" : "_decreasing"), RoleBase::Axiom,
                              make_quantified(Quantifier::Forall,
                                              {world_binding("W"), world_binding("V"), Binding{"X", ty}}, body)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Problems

namespace {

void collect_base_types(const TypePtr& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const BaseType& b) { out.insert(b.name); },
                 [&](const MappingType& m) {
                   for (const auto& a : m.args) collect_base_types(a, out);
                   collect_base_types(m.result, out);
                 },
                 [&](const CurriedType& c) {
                   collect_base_types(c.arg, out);
                   collect_base_types(c.result, out);
                 },
             },
             t->node);
}

struct FormulaFacts {
  std::set<std::string> binding_types;
  std::set<std::string> indices;
  std::map<std::string, std::vector<TermPtr>> literals;  // type -> literals in first-use order
};

void scan(const TermPtr& t, FormulaFacts& facts);

void scan(const FormulaPtr& f, FormulaFacts& facts) {
  auto terms = [&](const std::vector<TermPtr>& ts) {
    for (const auto& t : ts) scan(t, facts);
  };
  auto binders = [&](const std::vector<Binding>& bs) {
    for (const auto& b : bs) {
      if (b.type) collect_base_types(b.type, facts.binding_types);
      else facts.binding_types.insert(types::kIndividual);
    }
  };
  std::visit(overloaded{
                 [&](const AtomFormula& a) { terms(a.args); },
                 [&](const EqualityFormula& e) {
                   scan(e.lhs, facts);
                   scan(e.rhs, facts);
                 },
                 [&](const NotFormula& n) { scan(n.operand, facts); },
                 [&](const BinaryFormula& b) {
                   scan(b.lhs, facts);
                   scan(b.rhs, facts);
                 },
                 [&](const QuantifiedFormula& q) {
                   binders(q.bindings);
                   scan(q.body, facts);
                 },
                 [&](const LambdaFormula& l) {
                   binders(l.bindings);
                   scan(l.body, facts);
                 },
                 [&](const ApplyFormula& a) {
                   scan(a.head, facts);
                   scan(a.arg, facts);
                 },
                 [&](const NcApplyFormula& n) {
                   facts.indices.insert(index_key(n.conn.index));
                   terms(n.args);
                 },
                 [&](const ConditionalFormula& c) {
                   scan(c.condition, facts);
                   scan(c.then_branch, facts);
                   scan(c.else_branch, facts);
                 },
                 [](const auto&) {},
             },
             f->node);
}

void scan(const TermPtr& t, FormulaFacts& facts) {
  auto add_literal = [&](const std::string& type) {
    auto& v = facts.literals[type];
    for (const auto& existing : v)
      if (deep_equal(existing, t)) return;
    v.push_back(t);
  };
  std::visit(overloaded{
                 [&](const FunctionTerm& fn) {
                   for (const auto& a : fn.args) scan(a, facts);
                 },
                 [&](const NumberTerm& n) { add_literal(as_base(number_type(n.kind))->name); },
                 [&](const DistinctObjectTerm&) { add_literal(types::kIndividual); },
                 [&](const FormulaTerm& ft) { scan(ft.formula, facts); },
                 [&](const TupleTerm& tu) {
                   for (const auto& e : tu.elements) scan(e, facts);
                 },
                 [](const VariableTerm&) {},
             },
             t->node);
}

std::string choose_prefix(const Problem& problem) {
  std::set<std::string> names;
  for (const auto& u : problem)
    if (const FormulaPtr* f = u.formula()) collect_names(*f, names);
  std::string prefix = "MW";
  auto clashes = [&] {
    return std::any_of(names.begin(), names.end(), [&](const std::string& n) { return n.rfind(prefix, 0) == 0; });
  };
  while (clashes()) prefix += "W";
  return prefix;
}

}  // namespace

EmbedOutput embed_problem(const Problem& problem, const ModalSemantics& sem) {
  EmbedOutput out;
  out.warnings = sem.warnings;
  Signature sig = build_signature(problem);

  FormulaFacts facts;
  for (const auto& u : problem)
    if (const FormulaPtr* f = u.formula()) scan(*f, facts);

  const LogicSpec* spec = nullptr;
  for (const auto& u : problem)
    if (const LogicSpec* s = u.logic_spec()) spec = s;
  out.header.push_back("Classical THF embedding of a modal problem");
  if (spec) {
    out.header.push_back("Logic specification" + (sem.spec_name.empty() ? std::string() : " " + sem.spec_name) + ":");
    std::istringstream lines(print_logic_spec(*spec));
    for (std::string line; std::getline(lines, line);) out.header.push_back("  " + line);
  }

  // Relations: the default index always, plus every index used or configured.
  std::set<std::string> indices = facts.indices;
  indices.insert("");
  for (const auto& [key, _] : sem.modality_overrides) indices.insert(key);
  for (const auto& key : indices) out.relations[key] = relation_name(key);

  // Base types that need existence predicates.
  std::set<std::string> base_types = facts.binding_types;
  for (const auto& s : sig.sorts) base_types.insert(s);
  for (const auto& [_, t] : sig.types) collect_base_types(t, base_types);
  std::vector<std::string> varying;
  for (const auto& t : base_types) {
    if (t == types::kBool || t == types::kType) continue;
    if (sem.domain(t) == DomainKind::Constant) continue;
    varying.push_back(t);
    out.existence[t] = existence_name(t);
  }

  // Generated and lifted names must not collide.
  std::map<std::string, std::string> taken;  // output name -> what produced it
  auto claim = [&](const std::string& name, const std::string& owner) {
    auto [it, fresh] = taken.emplace(name, owner);
    if (!fresh)
      throw EmbedError(ErrorKind::TypeError, {},
                       "generated name '" + name + "' for " + owner + " collides with " + it->second);
  };
  claim(kWorldType, "the world type");
  claim(kCurrentWorld, "the current world");
  for (const auto& [key, rel] : out.relations) claim(rel, "the accessibility relation");
  for (const auto& [type, e] : out.existence) claim(e, "the existence predicate of " + type);
  for (const auto& s : sig.sorts) claim(s, "user type '" + s + "'");
  for (const auto& s : sig.order) {
    LiftedSymbol ls = lift_symbol(s, sig.types.at(s), sem);
    claim(ls.name, "user symbol '" + s + "'");
    out.symbols[s] = ls;
  }

  Problem& units = out.units;
  TypePtr w = world_type();
  units.push_back(type_unit("mworld_type", kWorldType, make_base_type(types::kType)));
  units.push_back(type_unit("mactual_decl", kCurrentWorld, w));
  for (const auto& [key, rel] : out.relations)
    units.push_back(type_unit(rel + "_decl", rel, make_curried_type({w, w}, bool_type())));
  for (const auto& [type, e] : out.existence)
    units.push_back(type_unit(e + "_decl", e, make_curried_type({w, make_base_type(type)}, bool_type())));
  for (const auto& s : sig.sorts) units.push_back(type_unit(unit_name(s) + "_type", s, make_base_type(types::kType)));
  for (const auto& s : sig.order) {
    const LiftedSymbol& ls = out.symbols.at(s);
    units.push_back(type_unit(unit_name(ls.name) + "_decl", ls.name, ls.type));
  }

  for (const auto& [key, rel] : out.relations)
    for (auto& a : frame_axioms(rel, frame_conditions(sem.modality(key)))) units.push_back(std::move(a));
  std::vector<std::string> rels;
  for (const auto& [key, rel] : out.relations) rels.push_back(rel);
  for (auto& a : domain_axioms(sem, varying, rels)) units.push_back(std::move(a));

  for (const auto& [type, lits] : facts.literals) {
    if (lits.size() < 2) continue;
    std::vector<FormulaPtr> diffs;
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j) diffs.push_back(make_equality(lits[i], lits[j], true));
    units.push_back(make_unit("mdistinct_" + sanitize(type), RoleBase::Axiom, conj(diffs)));
  }

  Embedder embedder(sig, sem, choose_prefix(problem));
  std::vector<AnnotatedFormula> conjectures;
  for (const auto& u : problem) {
    const FormulaPtr* f = u.formula();
    if (!f) continue;
    FormulaPtr body;
    try {
      FormulaPtr g = beta_normalize(*f);
      if (locality_of(u.role) == Locality::Global) {
        std::string v = embedder.world_var_prefix() + "0";
        body = make_quantified(Quantifier::Forall, {world_binding(v)}, embedder.at(g, var(v)));
      } else {
        body = embedder.at(g, make_function_term(kCurrentWorld));
      }
    } catch (const EmbedError& e) {
      SourcePos pos = e.pos().line ? e.pos() : u.pos;
      throw EmbedError(e.kind(), pos, "in '" + u.name + "': " + e.message());
    }
    RoleBase role = u.role.base == RoleBase::Definition ? RoleBase::Axiom : u.role.base;
    AnnotatedFormula unit = make_unit(u.name, role, body);
    unit.pos = u.pos;
    if (role == RoleBase::Conjecture) conjectures.push_back(std::move(unit));
    else units.push_back(std::move(unit));
  }
  for (auto& c : conjectures) units.push_back(std::move(c));
  return out;
}

EmbedOutput embed_problem(const CheckedProblem& checked) {
  if (checked.semantics) return embed_problem(checked.problem, *checked.semantics);
  EmbedOutput out;
  out.units = checked.problem;
  out.warnings.push_back("no logic specification: the problem is classical and is emitted unchanged");
  return out;
}

std::string print_embed_output(const EmbedOutput& out) {
  std::string text;
  for (const auto& line : out.header) text += "% " + line + "\n";
  if (!out.header.empty()) text += "\n";
  return text + print_problem(out.units);
}

// ---------------------------------------------------------------------------
// Standard translation

namespace {

FormulaPtr st(const FormulaPtr& f, const ModalSemantics& sem, const TermPtr& world, int depth) {
  return std::visit(
      overloaded{
          [&](const AtomFormula& a) -> FormulaPtr {
            if (!a.args.empty() || is_defined(a.symbol))
              unsupported("standard translation needs propositional atoms, found '" + a.symbol + "'");
            return make_atom(lifted_symbol_name(a.symbol), {world});
          },
          [&](const BoolConstFormula&) { return f; },
          [&](const NotFormula& n) { return make_not(st(n.operand, sem, world, depth)); },
          [&](const BinaryFormula& b) {
            return make_binary(b.op, st(b.lhs, sem, world, depth), st(b.rhs, sem, world, depth));
          },
          [&](const NcApplyFormula& n) -> FormulaPtr {
            ConnectiveKind kind = classify_connective(n.conn, sem.family, n.pos);
            if (kind == ConnectiveKind::Unsupported || !n.conn.params.empty() || n.args.size() != 1)
              throw EmbedError(ErrorKind::UnsupportedConstruct, n.pos,
                               "connective " + print_connective(n.conn) + " has no standard translation");
            FormulaPtr arg = to_formula(n.args[0]);
            if (!arg) throw EmbedError(ErrorKind::TypeError, n.pos, "argument of a modal connective must be a formula");
            std::string v = "W" + std::to_string(depth + 1);
            FormulaPtr rel = make_atom(relation_name(index_key(n.conn.index)), {world, var(v)});
            FormulaPtr body = st(arg, sem, var(v), depth + 1);
            if (kind == ConnectiveKind::Box)
              return make_quantified(Quantifier::Forall, {world_binding(v)}, make_binary(BinaryOp::Implies, rel, body));
            return make_quantified(Quantifier::Exists, {world_binding(v)}, make_binary(BinaryOp::And, rel, body));
          },
          [&](const auto&) -> FormulaPtr {
            unsupported("standard translation covers the propositional fragment only");
          },
      },
      f->node);
}

}  // namespace

FormulaPtr standard_translation(const FormulaPtr& f, const ModalSemantics& sem, const TermPtr& world) {
  return st(f, sem, world, 0);
}

Problem translate_problem(const CheckedProblem& checked) {
  if (!checked.semantics)
    throw EmbedError(ErrorKind::UnsupportedConstruct, {}, "standard translation needs a logic specification");
  const ModalSemantics& sem = *checked.semantics;
  const Problem& problem = checked.problem;
  Signature sig = build_signature(problem);
  FormulaFacts facts;
  for (const auto& u : problem)
    if (const FormulaPtr* f = u.formula()) scan(*f, facts);
  std::set<std::string> indices = facts.indices;
  indices.insert("");
  for (const auto& [key, _] : sem.modality_overrides) indices.insert(key);

  Problem out;
  TypePtr w = world_type();
  out.push_back(type_unit("mworld_type", kWorldType, make_base_type(types::kType), Language::Tff));
  out.push_back(type_unit("mactual_decl", kCurrentWorld, w, Language::Tff));
  for (const auto& key : indices) {
    std::string rel = relation_name(key);
    out.push_back(type_unit(rel + "_decl", rel, make_mapping_type({w, w}, bool_type()), Language::Tff));
  }
  for (const auto& s : sig.order) {
    if (!is_base(sig.types.at(s), types::kBool))
      unsupported("standard translation needs propositional symbols, '" + s + "' has type " +
                  print_type(sig.types.at(s)));
    std::string name = lifted_symbol_name(s);
    out.push_back(type_unit(unit_name(name) + "_decl", name, make_mapping_type({w}, bool_type()), Language::Tff));
  }
  for (const auto& key : indices)
    for (auto& a : frame_axioms(relation_name(key), frame_conditions(sem.modality(key)), Language::Tff))
      out.push_back(std::move(a));

  std::vector<AnnotatedFormula> conjectures;
  for (const auto& u : problem) {
    const FormulaPtr* f = u.formula();
    if (!f) continue;
    FormulaPtr body;
    try {
      if (locality_of(u.role) == Locality::Global)
        body = make_quantified(Quantifier::Forall, {world_binding("W0")}, standard_translation(*f, sem, var("W0")));
      else
        body = standard_translation(*f, sem, make_function_term(kCurrentWorld));
    } catch (const EmbedError& e) {
      throw EmbedError(e.kind(), e.pos().line ? e.pos() : u.pos, "in '" + u.name + "': " + e.message());
    }
    RoleBase role = u.role.base == RoleBase::Definition ? RoleBase::Axiom : u.role.base;
    AnnotatedFormula unit = make_unit(u.name, role, body, Language::Tff);
    if (role == RoleBase::Conjecture) conjectures.push_back(std::move(unit));
    else out.push_back(std::move(unit));
  }
  for (auto& c : conjectures) out.push_back(std::move(c));
  return out;
}

}  // namespace tptpnc
