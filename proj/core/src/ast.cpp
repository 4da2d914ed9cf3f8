#include "tptpnc/ast.hpp"

#include "tptpnc/detail/overloaded.hpp"

#include <algorithm>
#include <cctype>

namespace tptpnc {

namespace {

template <typename T>
bool deep_equal_ptr(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

template <typename P>
bool deep_equal_all(const std::vector<P>& a, const std::vector<P>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const P& x, const P& y) { return deep_equal(x, y); });
}

}  // namespace

using detail::overloaded;

bool deep_equal(const TypePtr& a, const TypePtr& b) { return deep_equal_ptr(a, b); }
bool deep_equal(const TermPtr& a, const TermPtr& b) { return deep_equal_ptr(a, b); }
bool deep_equal(const FormulaPtr& a, const FormulaPtr& b) { return deep_equal_ptr(a, b); }
bool deep_equal(const PropertyValuePtr& a, const PropertyValuePtr& b) { return deep_equal_ptr(a, b); }

bool operator==(const MappingType& a, const MappingType& b) {
  return deep_equal_all(a.args, b.args) && deep_equal(a.result, b.result);
}
bool operator==(const CurriedType& a, const CurriedType& b) {
  return deep_equal(a.arg, b.arg) && deep_equal(a.result, b.result);
}
bool operator==(const FunctionTerm& a, const FunctionTerm& b) {
  return a.symbol == b.symbol && deep_equal_all(a.args, b.args);
}
bool operator==(const FormulaTerm& a, const FormulaTerm& b) { return deep_equal(a.formula, b.formula); }
bool operator==(const TupleTerm& a, const TupleTerm& b) { return deep_equal_all(a.elements, b.elements); }
bool operator==(const KeyParam& a, const KeyParam& b) {
  return a.key == b.key && deep_equal(a.value, b.value);
}
bool operator==(const NcConnective& a, const NcConnective& b) {
  return a.name == b.name && deep_equal(a.index, b.index) && a.params == b.params && a.surface == b.surface;
}
bool operator==(const Binding& a, const Binding& b) { return a.name == b.name && deep_equal(a.type, b.type); }
bool operator==(const AtomFormula& a, const AtomFormula& b) {
  return a.symbol == b.symbol && deep_equal_all(a.args, b.args);
}
bool operator==(const EqualityFormula& a, const EqualityFormula& b) {
  return a.negated == b.negated && deep_equal(a.lhs, b.lhs) && deep_equal(a.rhs, b.rhs);
}
bool operator==(const NotFormula& a, const NotFormula& b) { return deep_equal(a.operand, b.operand); }
bool operator==(const BinaryFormula& a, const BinaryFormula& b) {
  return a.op == b.op && deep_equal(a.lhs, b.lhs) && deep_equal(a.rhs, b.rhs);
}
bool operator==(const QuantifiedFormula& a, const QuantifiedFormula& b) {
  return a.quantifier == b.quantifier && a.bindings == b.bindings && deep_equal(a.body, b.body);
}
bool operator==(const LambdaFormula& a, const LambdaFormula& b) {
  return a.bindings == b.bindings && deep_equal(a.body, b.body);
}
bool operator==(const ApplyFormula& a, const ApplyFormula& b) {
  return deep_equal(a.head, b.head) && deep_equal(a.arg, b.arg);
}
bool operator==(const NcApplyFormula& a, const NcApplyFormula& b) {
  return a.conn == b.conn && deep_equal_all(a.args, b.args);
}
bool operator==(const ConditionalFormula& a, const ConditionalFormula& b) {
  return deep_equal(a.condition, b.condition) && deep_equal(a.then_branch, b.then_branch) &&
         deep_equal(a.else_branch, b.else_branch);
}
bool operator==(const LetTyping& a, const LetTyping& b) {
  return a.symbol == b.symbol && deep_equal(a.type, b.type);
}
bool operator==(const LetDefinition& a, const LetDefinition& b) {
  return deep_equal(a.lhs, b.lhs) && deep_equal(a.rhs, b.rhs);
}
bool operator==(const LetFormula& a, const LetFormula& b) {
  return a.typings == b.typings && a.definitions == b.definitions && deep_equal(a.body, b.body);
}
bool operator==(const OverrideKey& a, const OverrideKey& b) {
  return a.bracket == b.bracket && deep_equal(a.term, b.term);
}
bool operator==(const PropertyOverride& a, const PropertyOverride& b) {
  return a.key == b.key && deep_equal(a.value, b.value);
}
bool operator==(const ListValue& a, const ListValue& b) {
  return deep_equal(a.default_value, b.default_value) && a.overrides == b.overrides;
}
bool operator==(const PropertyValue& a, const PropertyValue& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* t = std::get_if<TermPtr>(&a.node)) return deep_equal(*t, std::get<TermPtr>(b.node));
  return std::get<ListValue>(a.node) == std::get<ListValue>(b.node);
}
bool operator==(const LogicProperty& a, const LogicProperty& b) {
  return a.name == b.name && deep_equal(a.value, b.value);
}
bool operator==(const TypeDecl& a, const TypeDecl& b) {
  return a.symbol == b.symbol && deep_equal(a.type, b.type);
}

bool operator==(const AnnotatedFormula& a, const AnnotatedFormula& b) {
  if (a.language != b.language || a.name != b.name || !(a.role == b.role)) return false;
  if (a.payload.index() != b.payload.index()) return false;
  return std::visit(overloaded{
                        [&](const FormulaPtr& f) { return deep_equal(f, std::get<FormulaPtr>(b.payload)); },
                        [&](const TypeDecl& d) { return d == std::get<TypeDecl>(b.payload); },
                        [&](const LogicSpec& s) { return s == std::get<LogicSpec>(b.payload); },
                    },
                    a.payload);
}

// ---------------------------------------------------------------------------

TypePtr make_base_type(std::string name) { return std::make_shared<const Type>(Type{BaseType{std::move(name)}}); }
TypePtr make_mapping_type(std::vector<TypePtr> args, TypePtr result) {
  return std::make_shared<const Type>(Type{MappingType{std::move(args), std::move(result)}});
}
TypePtr make_curried_type(TypePtr arg, TypePtr result) {
  return std::make_shared<const Type>(Type{CurriedType{std::move(arg), std::move(result)}});
}
TypePtr make_curried_type(const std::vector<TypePtr>& args, TypePtr result) {
  TypePtr t = std::move(result);
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = make_curried_type(*it, t);
  return t;
}

const BaseType* as_base(const TypePtr& t) { return t ? std::get_if<BaseType>(&t->node) : nullptr; }

bool is_base(const TypePtr& t, std::string_view name) {
  const BaseType* b = as_base(t);
  return b && b->name == name;
}

FunctionShape uncurry(const TypePtr& t) {
  FunctionShape shape;
  TypePtr cur = t;
  while (cur) {
    if (auto* m = std::get_if<MappingType>(&cur->node)) {
      shape.args.insert(shape.args.end(), m->args.begin(), m->args.end());
      cur = m->result;
    } else if (auto* c = std::get_if<CurriedType>(&cur->node)) {
      shape.args.push_back(c->arg);
      cur = c->result;
    } else {
      break;
    }
  }
  shape.result = cur;
  return shape;
}

TypePtr curry_all(const TypePtr& t) {
  if (!t || as_base(t)) return t;
  FunctionShape shape = uncurry(t);
  std::vector<TypePtr> args;
  args.reserve(shape.args.size());
  for (const auto& a : shape.args) args.push_back(curry_all(a));
  return make_curried_type(args, shape.result);
}

TermPtr make_variable_term(std::string name) {
  return std::make_shared<const Term>(Term{VariableTerm{std::move(name)}});
}
TermPtr make_function_term(std::string symbol, std::vector<TermPtr> args) {
  return std::make_shared<const Term>(Term{FunctionTerm{std::move(symbol), std::move(args)}});
}
TermPtr make_number_term(NumberKind kind, std::string lexeme) {
  return std::make_shared<const Term>(Term{NumberTerm{kind, std::move(lexeme)}});
}
TermPtr make_distinct_object_term(std::string lexeme) {
  return std::make_shared<const Term>(Term{DistinctObjectTerm{std::move(lexeme)}});
}
TermPtr make_formula_term(FormulaPtr f) { return std::make_shared<const Term>(Term{FormulaTerm{std::move(f)}}); }
TermPtr make_tuple_term(std::vector<TermPtr> elements) {
  return std::make_shared<const Term>(Term{TupleTerm{std::move(elements)}});
}

NumberKind classify_number(std::string_view lexeme) {
  if (lexeme.find('/') != std::string_view::npos) return NumberKind::Rational;
  if (lexeme.find_first_of(".eE") != std::string_view::npos) return NumberKind::Real;
  return NumberKind::Integer;
}

namespace {
FormulaPtr wrap(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

FormulaPtr make_atom(std::string symbol, std::vector<TermPtr> args) {
  return wrap(Formula{AtomFormula{std::move(symbol), std::move(args)}});
}
FormulaPtr make_equality(TermPtr lhs, TermPtr rhs, bool negated) {
  return wrap(Formula{EqualityFormula{std::move(lhs), std::move(rhs), negated}});
}
FormulaPtr make_not(FormulaPtr f) { return wrap(Formula{NotFormula{std::move(f)}}); }
FormulaPtr make_binary(BinaryOp op, FormulaPtr lhs, FormulaPtr rhs) {
  return wrap(Formula{BinaryFormula{op, std::move(lhs), std::move(rhs)}});
}
FormulaPtr make_quantified(Quantifier q, std::vector<Binding> bindings, FormulaPtr body) {
  return wrap(Formula{QuantifiedFormula{q, std::move(bindings), std::move(body)}});
}
FormulaPtr make_lambda(std::vector<Binding> bindings, FormulaPtr body) {
  return wrap(Formula{LambdaFormula{std::move(bindings), std::move(body)}});
}
FormulaPtr make_apply(FormulaPtr head, TermPtr arg) {
  return wrap(Formula{ApplyFormula{std::move(head), std::move(arg)}});
}
FormulaPtr make_apply(FormulaPtr head, const std::vector<TermPtr>& args) {
  for (const auto& a : args) head = make_apply(head, a);
  return head;
}
FormulaPtr make_nc_apply(NcConnective conn, std::vector<TermPtr> args, SourcePos pos) {
  return wrap(Formula{NcApplyFormula{std::move(conn), std::move(args), pos}});
}
FormulaPtr make_conditional(FormulaPtr cond, TermPtr then_branch, TermPtr else_branch) {
  return wrap(Formula{ConditionalFormula{std::move(cond), std::move(then_branch), std::move(else_branch)}});
}
FormulaPtr make_let(std::vector<LetTyping> typings, std::vector<LetDefinition> defs, TermPtr body) {
  return wrap(Formula{LetFormula{std::move(typings), std::move(defs), std::move(body)}});
}
FormulaPtr make_bool(bool value) { return wrap(Formula{BoolConstFormula{value}}); }
FormulaPtr make_variable_formula(std::string name) { return wrap(Formula{VariableFormula{std::move(name)}}); }

TermPtr to_term(const FormulaPtr& f) {
  if (auto* a = std::get_if<AtomFormula>(&f->node)) return make_function_term(a->symbol, a->args);
  if (auto* v = std::get_if<VariableFormula>(&f->node)) return make_variable_term(v->name);
  return make_formula_term(f);
}

FormulaPtr to_formula(const TermPtr& t) {
  return std::visit(overloaded{
                        [](const VariableTerm& v) -> FormulaPtr { return make_variable_formula(v.name); },
                        [](const FunctionTerm& fn) -> FormulaPtr { return make_atom(fn.symbol, fn.args); },
                        [](const FormulaTerm& ft) -> FormulaPtr { return ft.formula; },
                        [](const auto&) -> FormulaPtr { return nullptr; },
                    },
                    t->node);
}

ApplicationSpine application_spine(const FormulaPtr& f) {
  ApplicationSpine spine;
  FormulaPtr cur = f;
  while (auto* app = std::get_if<ApplyFormula>(&cur->node)) {
    spine.args.push_back(app->arg);
    cur = app->head;
  }
  std::reverse(spine.args.begin(), spine.args.end());
  spine.head = cur;
  return spine;
}

// ---------------------------------------------------------------------------

bool is_axiom_like(RoleBase r) {
  switch (r) {
    case RoleBase::Axiom:
    case RoleBase::Hypothesis:
    case RoleBase::Definition:
    case RoleBase::Lemma:
    case RoleBase::Theorem:
    case RoleBase::Assumption:
      return true;
    default:
      return false;
  }
}

namespace {
constexpr std::pair<RoleBase, const char*> kRoleNames[] = {
    {RoleBase::Axiom, "axiom"},
    {RoleBase::Hypothesis, "hypothesis"},
    {RoleBase::Definition, "definition"},
    {RoleBase::Lemma, "lemma"},
    {RoleBase::Theorem, "theorem"},
    {RoleBase::Assumption, "assumption"},
    {RoleBase::Conjecture, "conjecture"},
    {RoleBase::NegatedConjecture, "negated_conjecture"},
    {RoleBase::Type, "type"},
    {RoleBase::Logic, "logic"},
};
}  // namespace

std::string role_name(const Role& r) {
  std::string name;
  for (const auto& [base, text] : kRoleNames)
    if (base == r.base) name = text;
  if (r.subrole) name += *r.subrole == Subrole::Local ? "-local" : "-global";
  return name;
}

std::optional<Role> parse_role(std::string_view text) {
  Role role;
  std::string_view base = text;
  if (auto dash = text.find('-'); dash != std::string_view::npos) {
    base = text.substr(0, dash);
    std::string_view sub = text.substr(dash + 1);
    if (sub == "local") {
      role.subrole = Subrole::Local;
    } else if (sub == "global") {
      role.subrole = Subrole::Global;
    } else {
      return std::nullopt;
    }
  }
  bool found = false;
  for (const auto& [b, name] : kRoleNames) {
    if (base == name) {
      role.base = b;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  if (role.subrole && !is_axiom_like(role.base) && role.base != RoleBase::Conjecture) return std::nullopt;
  return role;
}

// ---------------------------------------------------------------------------

namespace {

struct FreeVarCollector {
  std::set<std::string> result;
  std::vector<std::string> bound;

  bool is_bound(const std::string& n) const { return std::find(bound.begin(), bound.end(), n) != bound.end(); }

  void note(const std::string& n) {
    if (!is_bound(n)) result.insert(n);
  }

  void term(const TermPtr& t) {
    if (!t) return;
    std::visit(overloaded{
                   [&](const VariableTerm& v) { note(v.name); },
                   [&](const FunctionTerm& fn) {
                     for (const auto& a : fn.args) term(a);
                   },
                   [&](const FormulaTerm& ft) { formula(ft.formula); },
                   [&](const TupleTerm& tt) {
                     for (const auto& e : tt.elements) term(e);
                   },
                   [](const auto&) {},
               },
               t->node);
  }

  void binder(const std::vector<Binding>& bs, const FormulaPtr& body) {
    for (const auto& b : bs) bound.push_back(b.name);
    formula(body);
    bound.resize(bound.size() - bs.size());
  }

  void formula(const FormulaPtr& f) {
    if (!f) return;
    std::visit(overloaded{
                   [&](const AtomFormula& a) {
                     for (const auto& t : a.args) term(t);
                   },
                   [&](const EqualityFormula& e) {
                     term(e.lhs);
                     term(e.rhs);
                   },
                   [&](const NotFormula& n) { formula(n.operand); },
                   [&](const BinaryFormula& b) {
                     formula(b.lhs);
                     formula(b.rhs);
                   },
                   [&](const QuantifiedFormula& q) { binder(q.bindings, q.body); },
                   [&](const LambdaFormula& l) { binder(l.bindings, l.body); },
                   [&](const ApplyFormula& a) {
                     formula(a.head);
                     term(a.arg);
                   },
                   [&](const NcApplyFormula& n) {
                     for (const auto& t : n.args) term(t);
                   },
                   [&](const ConditionalFormula& c) {
                     formula(c.condition);
                     term(c.then_branch);
                     term(c.else_branch);
                   },
                   [&](const LetFormula& l) {
                     for (const auto& d : l.definitions) term(d.rhs);
                     term(l.body);
                   },
                   [](const BoolConstFormula&) {},
                   [&](const VariableFormula& v) { note(v.name); },
               },
               f->node);
  }
};

struct NcCollector {
  std::vector<NcOccurrence>* out;
  std::size_t unit_index;
  const std::string* unit_name;

  void term(const TermPtr& t) {
    if (!t) return;
    std::visit(overloaded{
                   [&](const FunctionTerm& fn) {
                     for (const auto& a : fn.args) term(a);
                   },
                   [&](const FormulaTerm& ft) { formula(ft.formula); },
                   [&](const TupleTerm& tt) {
                     for (const auto& e : tt.elements) term(e);
                   },
                   [](const auto&) {},
               },
               t->node);
  }

  void formula(const FormulaPtr& f) {
    if (!f) return;
    std::visit(overloaded{
                   [&](const AtomFormula& a) {
                     for (const auto& t : a.args) term(t);
                   },
                   [&](const EqualityFormula& e) {
                     term(e.lhs);
                     term(e.rhs);
                   },
                   [&](const NotFormula& n) { formula(n.operand); },
                   [&](const BinaryFormula& b) {
                     formula(b.lhs);
                     formula(b.rhs);
                   },
                   [&](const QuantifiedFormula& q) { formula(q.body); },
                   [&](const LambdaFormula& l) { formula(l.body); },
                   [&](const ApplyFormula& a) {
                     formula(a.head);
                     term(a.arg);
                   },
                   [&](const NcApplyFormula& n) {
                     out->push_back(NcOccurrence{unit_index, *unit_name, n.conn, n.args.size(), n.pos});
                     for (const auto& t : n.args) term(t);
                   },
                   [&](const ConditionalFormula& c) {
                     formula(c.condition);
                     term(c.then_branch);
                     term(c.else_branch);
                   },
                   [&](const LetFormula& l) {
                     for (const auto& d : l.definitions) term(d.rhs);
                     term(l.body);
                   },
                   [](const auto&) {},
               },
               f->node);
  }
};

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  FreeVarCollector c;
  c.formula(f);
  return c.result;
}

std::set<std::string> free_variables(const TermPtr& t) {
  FreeVarCollector c;
  c.term(t);
  return c.result;
}

std::vector<NcOccurrence> collect_nc_connectives(const Problem& problem) {
  std::vector<NcOccurrence> out;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    if (const FormulaPtr* f = problem[i].formula()) {
      NcCollector c{&out, i, &problem[i].name};
      c.formula(*f);
    }
  }
  return out;
}

bool contains_nc_apply(const FormulaPtr& f) {
  std::vector<NcOccurrence> out;
  std::string name;
  NcCollector c{&out, 0, &name};
  c.formula(f);
  return !out.empty();
}

}  // namespace tptpnc
