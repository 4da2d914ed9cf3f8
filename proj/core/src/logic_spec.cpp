#include "tptpnc/logic_spec.hpp"

#include <algorithm>

#include "tptpnc/detail/overloaded.hpp"
#include "tptpnc/diagnostics.hpp"
#include "tptpnc/printer.hpp"

namespace tptpnc {

using detail::overloaded;

namespace {

const std::pair<const char*, ModalSystem> kSystems[] = {
    {"K", ModalSystem::K},     {"KB", ModalSystem::KB}, {"K4", ModalSystem::K4},   {"K5", ModalSystem::K5},
    {"K45", ModalSystem::K45}, {"KB5", ModalSystem::KB5}, {"D", ModalSystem::D},   {"DB", ModalSystem::DB},
    {"D4", ModalSystem::D4},   {"D5", ModalSystem::D5}, {"D45", ModalSystem::D45}, {"T", ModalSystem::T},
    {"B", ModalSystem::B},     {"S4", ModalSystem::S4}, {"S5", ModalSystem::S5},   {"S5U", ModalSystem::S5U},
};

const std::pair<const char*, ModalAxiom> kAxioms[] = {
    {"K", ModalAxiom::K},   {"T", ModalAxiom::T},       {"B", ModalAxiom::B},   {"D", ModalAxiom::D},
    {"4", ModalAxiom::Four}, {"5", ModalAxiom::Five},   {"CD", ModalAxiom::CD}, {"BoxM", ModalAxiom::BoxM},
    {"C4", ModalAxiom::C4}, {"C", ModalAxiom::C},
};

constexpr std::string_view kSystemPrefix = "$modal_system_";
constexpr std::string_view kAxiomPrefix = "$modal_axiom_";

[[noreturn]] void spec_error(ErrorKind kind, SourcePos pos, const std::string& message) {
  throw SpecError(kind, pos, message);
}

// Name of a constant term, or nullopt if the term is anything else.
std::optional<std::string> constant_name(const TermPtr& t) {
  if (!t) return std::nullopt;
  if (auto* f = std::get_if<FunctionTerm>(&t->node); f && f->args.empty()) return f->symbol;
  return std::nullopt;
}

bool is_valid_index(const TermPtr& t) {
  return constant_name(t).has_value() || std::holds_alternative<NumberTerm>(t->node);
}

std::string describe(const TermPtr& t) { return t ? print_term(t) : "<none>"; }

Rigidity parse_rigidity(const TermPtr& t, SourcePos pos) {
  auto name = constant_name(t);
  if (name == "$rigid") return Rigidity::Rigid;
  if (name == "$flexible") return Rigidity::Flexible;
  spec_error(ErrorKind::UnknownValue, pos, "'" + describe(t) + "' is not a $constants value ($rigid or $flexible)");
}

DomainKind parse_domain(const TermPtr& t, SourcePos pos) {
  auto name = constant_name(t);
  if (name == "$constant") return DomainKind::Constant;
  if (name == "$varying") return DomainKind::Varying;
  if (name == "$cumulative") return DomainKind::Cumulative;
  if (name == "$decreasing") return DomainKind::Decreasing;
  spec_error(ErrorKind::UnknownValue, pos,
             "'" + describe(t) + "' is not a $quantification value ($constant, $varying, $cumulative or $decreasing)");
}

std::optional<ModalAxiom> parse_axiom(const std::string& name) {
  if (name.rfind(kAxiomPrefix, 0) != 0) return std::nullopt;
  std::string suffix = name.substr(kAxiomPrefix.size());
  for (const auto& [n, a] : kAxioms)
    if (suffix == n) return a;
  return std::nullopt;
}

ModalitySpec parse_modality_term(const TermPtr& t, SourcePos pos) {
  if (auto name = constant_name(t)) {
    if (name->rfind(kSystemPrefix, 0) == 0) {
      std::string suffix = name->substr(kSystemPrefix.size());
      for (const auto& [n, s] : kSystems)
        if (suffix == n) return ModalitySpec{s};
    }
    if (auto a = parse_axiom(*name)) return ModalitySpec{std::set<ModalAxiom>{*a}};
  }
  if (auto* tuple = std::get_if<TupleTerm>(&t->node)) {
    if (tuple->elements.empty()) spec_error(ErrorKind::UnknownValue, pos, "an axiom list must not be empty");
    std::set<ModalAxiom> axioms;
    for (const auto& e : tuple->elements) {
      auto name = constant_name(e);
      auto a = name ? parse_axiom(*name) : std::nullopt;
      if (!a) spec_error(ErrorKind::UnknownValue, pos, "'" + describe(e) + "' is not a $modal_axiom_X value");
      axioms.insert(*a);
    }
    return ModalitySpec{std::move(axioms)};
  }
  spec_error(ErrorKind::UnknownValue, pos,
             "'" + describe(t) + "' is not a $modalities value ($modal_system_X or a list of $modal_axiom_X)");
}

// A nested value used as an override: a constant or a one-element list.
TermPtr simple_value(const PropertyValuePtr& v, SourcePos pos) {
  if (auto* t = std::get_if<TermPtr>(&v->node)) return *t;
  const auto& l = std::get<ListValue>(v->node);
  if (l.default_value && l.overrides.empty()) return l.default_value;
  spec_error(ErrorKind::UnknownValue, pos, "nested overrides are not allowed inside an override value");
}

template <typename T, typename Parse, typename Key>
void resolve_property(const PropertyValuePtr& v, SourcePos pos, T& default_out, std::map<std::string, T>& overrides,
                      bool& defaulted, Parse parse, Key key) {
  if (auto* t = std::get_if<TermPtr>(&v->node)) {
    default_out = parse(*t, pos);
    return;
  }
  const auto& l = std::get<ListValue>(v->node);
  if (l.default_value) {
    default_out = parse(l.default_value, pos);
  } else {
    defaulted = true;
  }
  for (const auto& o : l.overrides) {
    std::string k = key(o.key, pos);
    if (overrides.count(k)) spec_error(ErrorKind::BadOverrideKey, pos, "override for '" + k + "' given twice");
    overrides.emplace(k, parse(simple_value(o.value, pos), pos));
  }
}

std::string plain_key(const OverrideKey& k, SourcePos pos, const char* what, bool allow_defined) {
  auto name = constant_name(k.term);
  if (k.bracket || !name || (!allow_defined && name->rfind("$", 0) == 0))
    spec_error(ErrorKind::BadOverrideKey, pos, std::string("'") + describe(k.term) + "' is not a valid " + what);
  return *name;
}

// ---- formula traversal -------------------------------------------------------

template <typename Fn>
FormulaPtr map_connectives(const FormulaPtr& f, Fn& fn);

template <typename Fn>
TermPtr map_term(const TermPtr& t, Fn& fn) {
  return std::visit(overloaded{
                        [&](const FunctionTerm& ft) {
                          std::vector<TermPtr> args;
                          for (const auto& a : ft.args) args.push_back(map_term(a, fn));
                          return make_function_term(ft.symbol, std::move(args));
                        },
                        [&](const FormulaTerm& ft) { return make_formula_term(map_connectives(ft.formula, fn)); },
                        [&](const TupleTerm& tu) {
                          std::vector<TermPtr> es;
                          for (const auto& e : tu.elements) es.push_back(map_term(e, fn));
                          return make_tuple_term(std::move(es));
                        },
                        [&](const auto&) { return t; },
                    },
                    t->node);
}

template <typename Fn>
std::vector<TermPtr> map_terms(const std::vector<TermPtr>& ts, Fn& fn) {
  std::vector<TermPtr> out;
  for (const auto& t : ts) out.push_back(map_term(t, fn));
  return out;
}

template <typename Fn>
FormulaPtr map_connectives(const FormulaPtr& f, Fn& fn) {
  return std::visit(
      overloaded{
          [&](const AtomFormula& a) { return make_atom(a.symbol, map_terms(a.args, fn)); },
          [&](const EqualityFormula& e) { return make_equality(map_term(e.lhs, fn), map_term(e.rhs, fn), e.negated); },
          [&](const NotFormula& n) { return make_not(map_connectives(n.operand, fn)); },
          [&](const BinaryFormula& b) {
            return make_binary(b.op, map_connectives(b.lhs, fn), map_connectives(b.rhs, fn));
          },
          [&](const QuantifiedFormula& q) { return make_quantified(q.quantifier, q.bindings, map_connectives(q.body, fn)); },
          [&](const LambdaFormula& l) { return make_lambda(l.bindings, map_connectives(l.body, fn)); },
          [&](const ApplyFormula& a) { return make_apply(map_connectives(a.head, fn), map_term(a.arg, fn)); },
          [&](const NcApplyFormula& n) { return make_nc_apply(fn(n.conn, n.pos), map_terms(n.args, fn), n.pos); },
          [&](const ConditionalFormula& c) {
            return make_conditional(map_connectives(c.condition, fn), map_term(c.then_branch, fn),
                                    map_term(c.else_branch, fn));
          },
          [&](const LetFormula& l) {
            std::vector<LetDefinition> defs;
            for (const auto& d : l.definitions) defs.push_back({map_term(d.lhs, fn), map_term(d.rhs, fn)});
            return make_let(l.typings, std::move(defs), map_term(l.body, fn));
          },
          [&](const auto&) { return f; },
      },
      f->node);
}

void collect_function_symbols(const TermPtr& t, std::set<std::string>& out);

void collect_function_symbols(const FormulaPtr& f, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const AtomFormula& a) {
                   for (const auto& x : a.args) collect_function_symbols(x, out);
                 },
                 [&](const EqualityFormula& e) {
                   collect_function_symbols(e.lhs, out);
                   collect_function_symbols(e.rhs, out);
                 },
                 [&](const NotFormula& n) { collect_function_symbols(n.operand, out); },
                 [&](const BinaryFormula& b) {
                   collect_function_symbols(b.lhs, out);
                   collect_function_symbols(b.rhs, out);
                 },
                 [&](const QuantifiedFormula& q) { collect_function_symbols(q.body, out); },
                 [&](const LambdaFormula& l) { collect_function_symbols(l.body, out); },
                 [&](const ApplyFormula& a) {
                   collect_function_symbols(a.head, out);
                   collect_function_symbols(a.arg, out);
                 },
                 [&](const NcApplyFormula& n) {
                   for (const auto& x : n.args) collect_function_symbols(x, out);
                 },
                 [&](const auto&) {},
             },
             f->node);
}

void collect_function_symbols(const TermPtr& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const FunctionTerm& ft) {
                   if (ft.symbol.rfind("$", 0) != 0) out.insert(ft.symbol);
                   for (const auto& a : ft.args) collect_function_symbols(a, out);
                 },
                 [&](const FormulaTerm& ft) {
                   // A plain atom in argument position is a function term already;
                   // nested formulas only contribute their arguments.
                   collect_function_symbols(ft.formula, out);
                 },
                 [&](const TupleTerm& tu) {
                   for (const auto& e : tu.elements) collect_function_symbols(e, out);
                 },
                 [&](const auto&) {},
             },
             t->node);
}

TypePtr final_result(TypePtr t) {
  while (true) {
    if (auto* m = std::get_if<MappingType>(&t->node)) {
      t = m->result;
    } else if (auto* c = std::get_if<CurriedType>(&t->node)) {
      t = c->result;
    } else {
      return t;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::set<ModalAxiom> system_axioms(ModalSystem s) {
  using A = ModalAxiom;
  switch (s) {
    case ModalSystem::K: return {A::K};
    case ModalSystem::KB: return {A::K, A::B};
    case ModalSystem::K4: return {A::K, A::Four};
    case ModalSystem::K5: return {A::K, A::Five};
    case ModalSystem::K45: return {A::K, A::Four, A::Five};
    case ModalSystem::KB5: return {A::K, A::B, A::Five};
    case ModalSystem::D: return {A::K, A::D};
    case ModalSystem::DB: return {A::K, A::D, A::B};
    case ModalSystem::D4: return {A::K, A::D, A::Four};
    case ModalSystem::D5: return {A::K, A::D, A::Five};
    case ModalSystem::D45: return {A::K, A::D, A::Four, A::Five};
    case ModalSystem::T: return {A::K, A::T};
    case ModalSystem::B: return {A::K, A::T, A::B};
    case ModalSystem::S4: return {A::K, A::T, A::Four};
    case ModalSystem::S5:
    case ModalSystem::S5U: return {A::K, A::T, A::Five};
  }
  return {A::K};
}

std::set<ModalAxiom> ModalitySpec::axioms() const {
  std::set<ModalAxiom> out =
      std::visit(overloaded{[](ModalSystem s) { return system_axioms(s); },
                            [](const std::set<ModalAxiom>& a) { return a; }},
                 node);
  out.insert(ModalAxiom::K);
  return out;
}

std::set<FrameCondition> frame_conditions(const ModalitySpec& m) {
  std::set<FrameCondition> out;
  for (ModalAxiom a : m.axioms()) {
    switch (a) {
      case ModalAxiom::K: break;
      case ModalAxiom::T: out.insert(FrameCondition::Reflexive); break;
      case ModalAxiom::B: out.insert(FrameCondition::Symmetric); break;
      case ModalAxiom::D: out.insert(FrameCondition::Serial); break;
      case ModalAxiom::Four: out.insert(FrameCondition::Transitive); break;
      case ModalAxiom::Five: out.insert(FrameCondition::Euclidean); break;
      case ModalAxiom::CD: out.insert(FrameCondition::Functional); break;
      case ModalAxiom::BoxM: out.insert(FrameCondition::ShiftReflexive); break;
      case ModalAxiom::C4: out.insert(FrameCondition::Dense); break;
      case ModalAxiom::C: out.insert(FrameCondition::Confluent); break;
    }
  }
  if (m.universal()) out.insert(FrameCondition::Universal);
  return out;
}

Rigidity ModalSemantics::rigidity(const std::string& symbol) const {
  auto it = rigidity_overrides.find(symbol);
  return it == rigidity_overrides.end() ? default_rigidity : it->second;
}

DomainKind ModalSemantics::domain(const std::string& type_name) const {
  auto it = domain_overrides.find(type_name);
  return it == domain_overrides.end() ? default_domain : it->second;
}

const ModalitySpec& ModalSemantics::modality(const std::string& index) const {
  auto it = modality_overrides.find(index);
  return it == modality_overrides.end() ? default_modality : it->second;
}

const ModalitySpec& ModalSemantics::modality(const TermPtr& index) const { return modality(index_key(index)); }

std::string index_key(const TermPtr& index) { return index ? print_term(index) : ""; }

std::string_view family_name(LogicFamily f) {
  switch (f) {
    case LogicFamily::Modal: return "$modal";
    case LogicFamily::Alethic: return "$alethic_modal";
    case LogicFamily::Deontic: return "$deontic_modal";
    case LogicFamily::Epistemic: return "$epistemic_modal";
  }
  return "$modal";
}

std::string_view rigidity_name(Rigidity r) { return r == Rigidity::Rigid ? "$rigid" : "$flexible"; }

std::string_view domain_kind_name(DomainKind d) {
  switch (d) {
    case DomainKind::Constant: return "$constant";
    case DomainKind::Varying: return "$varying";
    case DomainKind::Cumulative: return "$cumulative";
    case DomainKind::Decreasing: return "$decreasing";
  }
  return "$constant";
}

std::string modal_system_name(ModalSystem s) {
  for (const auto& [n, x] : kSystems)
    if (x == s) return n;
  return "?";
}

std::string modal_axiom_name(ModalAxiom a) {
  for (const auto& [n, x] : kAxioms)
    if (x == a) return n;
  return "?";
}

std::string_view frame_condition_name(FrameCondition c) {
  switch (c) {
    case FrameCondition::Reflexive: return "reflexive";
    case FrameCondition::Symmetric: return "symmetric";
    case FrameCondition::Serial: return "serial";
    case FrameCondition::Transitive: return "transitive";
    case FrameCondition::Euclidean: return "euclidean";
    case FrameCondition::Functional: return "functional";
    case FrameCondition::ShiftReflexive: return "shift_reflexive";
    case FrameCondition::Dense: return "dense";
    case FrameCondition::Confluent: return "confluent";
    case FrameCondition::Universal: return "universal";
  }
  return "?";
}

std::string modality_name(const ModalitySpec& m) {
  if (auto* s = std::get_if<ModalSystem>(&m.node)) return std::string(kSystemPrefix) + modal_system_name(*s);
  std::string out = "[";
  for (ModalAxiom a : std::get<std::set<ModalAxiom>>(m.node)) {
    if (out.size() > 1) out += ",";
    out += std::string(kAxiomPrefix) + modal_axiom_name(a);
  }
  return out + "]";
}

ModalSemantics validate_spec(const LogicSpec& spec, SourcePos pos) {
  ModalSemantics sem;
  if (spec.logic_name == "$modal") {
    sem.family = LogicFamily::Modal;
  } else if (spec.logic_name == "$alethic_modal") {
    sem.family = LogicFamily::Alethic;
  } else if (spec.logic_name == "$deontic_modal") {
    sem.family = LogicFamily::Deontic;
  } else if (spec.logic_name == "$epistemic_modal") {
    sem.family = LogicFamily::Epistemic;
  } else {
    spec_error(ErrorKind::UnknownLogicName, pos, "unknown logic '" + spec.logic_name + "'");
  }

  bool seen_constants = false, seen_quantification = false, seen_modalities = false;
  bool rigid_defaulted = false, domain_defaulted = false, modal_defaulted = false;
  for (const auto& prop : spec.properties) {
    auto once = [&](bool& seen) {
      if (seen) spec_error(ErrorKind::UnknownProperty, pos, "property '" + prop.name + "' given twice");
      seen = true;
    };
    if (prop.name == "$constants") {
      once(seen_constants);
      resolve_property(prop.value, pos, sem.default_rigidity, sem.rigidity_overrides, rigid_defaulted,
                       parse_rigidity,
                       [](const OverrideKey& k, SourcePos p) { return plain_key(k, p, "symbol for $constants", false); });
    } else if (prop.name == "$quantification") {
      once(seen_quantification);
      resolve_property(prop.value, pos, sem.default_domain, sem.domain_overrides, domain_defaulted, parse_domain,
                       [](const OverrideKey& k, SourcePos p) {
                         std::string name = plain_key(k, p, "type for $quantification", true);
                         if (name == "$o" || name == "$tType")
                           spec_error(ErrorKind::BadOverrideKey, p, "'" + name + "' cannot have a domain kind");
                         return name;
                       });
    } else if (prop.name == "$modalities") {
      once(seen_modalities);
      resolve_property(prop.value, pos, sem.default_modality, sem.modality_overrides, modal_defaulted,
                       parse_modality_term, [](const OverrideKey& k, SourcePos p) {
                         if (k.bracket != Surface::ShortBox)
                           spec_error(ErrorKind::BadOverrideKey, p,
                                      "'" + describe(k.term) + "': $modalities overrides must be keyed [#index]");
                         if (!is_valid_index(k.term))
                           spec_error(ErrorKind::BadIndex, p,
                                      "index '" + describe(k.term) + "' must be a constant, number or defined constant");
                         return index_key(k.term);
                       });
    } else if (prop.name.rfind("$$", 0) == 0) {
      sem.warnings.push_back("system property '" + prop.name + "' ignored");
    } else {
      spec_error(ErrorKind::UnknownProperty, pos, "unknown property '" + prop.name + "'");
    }
  }
  if (!seen_constants || rigid_defaulted) sem.warnings.push_back("$constants not given; defaulting to $rigid");
  if (!seen_quantification || domain_defaulted)
    sem.warnings.push_back("$quantification not given; defaulting to $constant");
  if (!seen_modalities || modal_defaulted)
    sem.warnings.push_back("$modalities not given; defaulting to $modal_system_K");
  return sem;
}

std::string box_name(LogicFamily f) {
  switch (f) {
    case LogicFamily::Modal: return "$box";
    case LogicFamily::Alethic: return "$necessary";
    case LogicFamily::Deontic: return "$obligatory";
    case LogicFamily::Epistemic: return "$knows";
  }
  return "$box";
}

std::string dia_name(LogicFamily f) {
  switch (f) {
    case LogicFamily::Modal: return "$dia";
    case LogicFamily::Alethic: return "$possible";
    case LogicFamily::Deontic: return "$permissible";
    case LogicFamily::Epistemic: return "$dia";
  }
  return "$dia";
}

ConnectiveKind classify_connective(const NcConnective& c, LogicFamily f, SourcePos pos) {
  const std::string& n = c.name;
  if (n.rfind("$$", 0) == 0) return ConnectiveKind::Unsupported;
  switch (f) {
    case LogicFamily::Modal:
      if (n == "$box" || n == "$necessary" || n == "$obligatory" || n == "$knows") return ConnectiveKind::Box;
      if (n == "$dia" || n == "$possible" || n == "$permissible") return ConnectiveKind::Diamond;
      break;
    case LogicFamily::Alethic:
      if (n == "$necessary") return ConnectiveKind::Box;
      if (n == "$possible") return ConnectiveKind::Diamond;
      break;
    case LogicFamily::Deontic:
      if (n == "$obligatory") return ConnectiveKind::Box;
      if (n == "$permissible") return ConnectiveKind::Diamond;
      break;
    case LogicFamily::Epistemic:
      if (n == "$knows") return ConnectiveKind::Box;
      if (n == "$dia") return ConnectiveKind::Diamond;
      if (n == "$believes" || n == "$common") return ConnectiveKind::Unsupported;
      break;
  }
  spec_error(ErrorKind::ConnectiveNotInFamily, pos,
             "connective '" + n + "' is not available in " + std::string(family_name(f)));
}

Locality locality_of(const Role& role) {
  if (role.subrole) return *role.subrole == Subrole::Local ? Locality::Local : Locality::Global;
  switch (role.base) {
    case RoleBase::Hypothesis:
    case RoleBase::Conjecture:
    case RoleBase::NegatedConjecture:
      return Locality::Local;
    default:
      return Locality::Global;
  }
}

NcConnective resolve_connective(const NcConnective& c, const ModalSemantics& sem, SourcePos pos) {
  NcConnective out = c;
  switch (c.surface) {
    case Surface::LongForm:
      break;
    case Surface::ShortBox:
      out.name = box_name(sem.family);
      break;
    case Surface::ShortDiamond:
      out.name = dia_name(sem.family);
      break;
    case Surface::ShortSlash:
      if (sem.family != LogicFamily::Epistemic)
        spec_error(ErrorKind::ConnectiveNotInFamily, pos,
                   "the /.\\ short form has no meaning in " + std::string(family_name(sem.family)));
      out.name = "$believes";
      break;
  }
  out.surface = Surface::LongForm;
  if (out.index && !is_valid_index(out.index))
    spec_error(ErrorKind::BadIndex, pos,
               "index '" + describe(out.index) + "' must be a constant, number or defined constant");
  classify_connective(out, sem.family, pos);
  return out;
}

FormulaPtr resolve_short_forms(const FormulaPtr& f, const ModalSemantics& sem) {
  auto fn = [&](const NcConnective& c, SourcePos pos) { return resolve_connective(c, sem, pos); };
  return map_connectives(f, fn);
}

Problem resolve_short_forms(const Problem& problem, const ModalSemantics& sem) {
  Problem out = problem;
  for (auto& u : out)
    if (auto* f = std::get_if<FormulaPtr>(&u.payload)) *f = resolve_short_forms(*f, sem);
  return out;
}

CheckedProblem check_problem(const Problem& problem) {
  const AnnotatedFormula* logic_unit = nullptr;
  for (const auto& u : problem) {
    if (u.role.base != RoleBase::Logic) continue;
    if (logic_unit)
      spec_error(ErrorKind::DuplicateLogicSpec, u.pos,
                 "second logic specification '" + u.name + "' (first is '" + logic_unit->name +
                     "'); expand generator files first");
    logic_unit = &u;
  }

  CheckedProblem out;
  if (!logic_unit) {
    auto occurrences = collect_nc_connectives(problem);
    if (!occurrences.empty())
      spec_error(ErrorKind::MissingLogicSpec, occurrences.front().pos,
                 "non-classical connective '" + print_connective(occurrences.front().conn) + "' in '" +
                     occurrences.front().unit_name + "' but the problem has no logic specification");
    out.problem = problem;
    return out;
  }

  ModalSemantics sem = validate_spec(*logic_unit->logic_spec(), logic_unit->pos);
  sem.spec_name = logic_unit->name;

  std::set<std::string> functions;
  for (const auto& u : problem) {
    if (auto* d = u.type_decl()) {
      TypePtr r = final_result(d->type);
      if (!is_base(r, types::kBool) && !is_base(r, types::kType)) functions.insert(d->symbol);
    } else if (auto* f = u.formula()) {
      collect_function_symbols(*f, functions);
    }
  }
  for (const auto& [symbol, r] : sem.rigidity_overrides) {
    (void)r;
    if (!functions.count(symbol))
      spec_error(ErrorKind::BadOverrideKey, logic_unit->pos,
                 "'" + symbol + "' in $constants is not a declared function or constant symbol");
  }

  out.problem = resolve_short_forms(problem, sem);
  out.semantics = std::move(sem);
  return out;
}

}  // namespace tptpnc
