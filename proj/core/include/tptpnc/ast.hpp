// Abstract syntax shared by the TFF/TXF/TXN and THF/THN dialects.
//
// Every node is immutable once built and is shared through shared_ptr<const T>.
// Structural equality (operator==) compares trees deeply and ignores source
// positions and annotation text.

#ifndef TPTPNC_AST_HPP_
#define TPTPNC_AST_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tptpnc {

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Type;
struct Term;
struct Formula;
struct PropertyValue;

using TypePtr = std::shared_ptr<const Type>;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using PropertyValuePtr = std::shared_ptr<const PropertyValue>;

bool deep_equal(const TypePtr& a, const TypePtr& b);
bool deep_equal(const TermPtr& a, const TermPtr& b);
bool deep_equal(const FormulaPtr& a, const FormulaPtr& b);
bool deep_equal(const PropertyValuePtr& a, const PropertyValuePtr& b);

// ---------------------------------------------------------------------------
// Types

struct BaseType {
  std::string name;  // $o, $i, $int, $rat, $real, $tType or a user type name
  friend bool operator==(const BaseType&, const BaseType&) = default;
};

// Uncurried TFF form: (t1 * ... * tn) > result.
struct MappingType {
  std::vector<TypePtr> args;
  TypePtr result;
  friend bool operator==(const MappingType& a, const MappingType& b);
};

// Curried THF form: arg > result.
struct CurriedType {
  TypePtr arg;
  TypePtr result;
  friend bool operator==(const CurriedType& a, const CurriedType& b);
};

struct Type {
  std::variant<BaseType, MappingType, CurriedType> node;
  friend bool operator==(const Type& a, const Type& b) { return a.node == b.node; }
};

namespace types {
inline constexpr const char* kBool = "$o";
inline constexpr const char* kIndividual = "$i";
inline constexpr const char* kInt = "$int";
inline constexpr const char* kRat = "$rat";
inline constexpr const char* kReal = "$real";
inline constexpr const char* kType = "$tType";
}  // namespace types

TypePtr make_base_type(std::string name);
TypePtr make_mapping_type(std::vector<TypePtr> args, TypePtr result);
TypePtr make_curried_type(TypePtr arg, TypePtr result);
// Right-nested curried type a1 > a2 > ... > result.
TypePtr make_curried_type(const std::vector<TypePtr>& args, TypePtr result);

bool is_base(const TypePtr& t, std::string_view name);
const BaseType* as_base(const TypePtr& t);

// Flattened view of a function type independent of curried/uncurried form.
struct FunctionShape {
  std::vector<TypePtr> args;
  TypePtr result;
};
FunctionShape uncurry(const TypePtr& t);
// Canonical curried form used for type comparison across dialects.
TypePtr curry_all(const TypePtr& t);

// ---------------------------------------------------------------------------
// Terms

enum class NumberKind { Integer, Rational, Real };

struct VariableTerm {
  std::string name;
  friend bool operator==(const VariableTerm&, const VariableTerm&) = default;
};

struct FunctionTerm {
  std::string symbol;
  std::vector<TermPtr> args;
  friend bool operator==(const FunctionTerm& a, const FunctionTerm& b);
};

// Numbers are kept as lexemes so that e.g. 43/92 prints back bit-exactly.
struct NumberTerm {
  NumberKind kind = NumberKind::Integer;
  std::string lexeme;
  friend bool operator==(const NumberTerm&, const NumberTerm&) = default;
};

struct DistinctObjectTerm {
  std::string lexeme;  // including the double quotes
  friend bool operator==(const DistinctObjectTerm&, const DistinctObjectTerm&) = default;
};

struct FormulaTerm {
  FormulaPtr formula;
  friend bool operator==(const FormulaTerm& a, const FormulaTerm& b);
};

struct TupleTerm {
  std::vector<TermPtr> elements;
  friend bool operator==(const TupleTerm& a, const TupleTerm& b);
};

struct Term {
  std::variant<VariableTerm, FunctionTerm, NumberTerm, DistinctObjectTerm, FormulaTerm, TupleTerm> node;
  friend bool operator==(const Term& a, const Term& b) { return a.node == b.node; }
};

TermPtr make_variable_term(std::string name);
TermPtr make_function_term(std::string symbol, std::vector<TermPtr> args = {});
TermPtr make_number_term(NumberKind kind, std::string lexeme);
TermPtr make_distinct_object_term(std::string lexeme);
TermPtr make_formula_term(FormulaPtr f);
TermPtr make_tuple_term(std::vector<TermPtr> elements);

NumberKind classify_number(std::string_view lexeme);

// ---------------------------------------------------------------------------
// Non-classical connectives

enum class Surface { LongForm, ShortBox, ShortDiamond, ShortSlash };

struct KeyParam {
  std::string key;  // $name or $$name
  TermPtr value;
  friend bool operator==(const KeyParam& a, const KeyParam& b);
};

struct NcConnective {
  std::string name;  // $name or $$name; empty for an unresolved short form
  TermPtr index;     // meta-level index constant (#i), may be null
  std::vector<KeyParam> params;
  Surface surface = Surface::LongForm;
  friend bool operator==(const NcConnective& a, const NcConnective& b);
};

// ---------------------------------------------------------------------------
// Formulas

enum class BinaryOp { And, Or, Implies, Implied, Iff, Xor };
enum class Quantifier { Forall, Exists };

struct Binding {
  std::string name;
  TypePtr type;  // null when untyped (FOF / default typing)
  friend bool operator==(const Binding& a, const Binding& b);
};

struct AtomFormula {
  std::string symbol;
  std::vector<TermPtr> args;
  friend bool operator==(const AtomFormula& a, const AtomFormula& b);
};

struct EqualityFormula {
  TermPtr lhs;
  TermPtr rhs;
  bool negated = false;
  friend bool operator==(const EqualityFormula& a, const EqualityFormula& b);
};

struct NotFormula {
  FormulaPtr operand;
  friend bool operator==(const NotFormula& a, const NotFormula& b);
};

struct BinaryFormula {
  BinaryOp op;
  FormulaPtr lhs;
  FormulaPtr rhs;
  friend bool operator==(const BinaryFormula& a, const BinaryFormula& b);
};

struct QuantifiedFormula {
  Quantifier quantifier;
  std::vector<Binding> bindings;
  FormulaPtr body;
  friend bool operator==(const QuantifiedFormula& a, const QuantifiedFormula& b);
};

struct LambdaFormula {
  std::vector<Binding> bindings;
  FormulaPtr body;
  friend bool operator==(const LambdaFormula& a, const LambdaFormula& b);
};

struct ApplyFormula {
  FormulaPtr head;
  TermPtr arg;
  friend bool operator==(const ApplyFormula& a, const ApplyFormula& b);
};

struct NcApplyFormula {
  NcConnective conn;
  std::vector<TermPtr> args;
  SourcePos pos;  // not part of equality
  friend bool operator==(const NcApplyFormula& a, const NcApplyFormula& b);
};

// $ite and $let are kept for parsing and printing only.
struct ConditionalFormula {
  FormulaPtr condition;
  TermPtr then_branch;
  TermPtr else_branch;
  friend bool operator==(const ConditionalFormula& a, const ConditionalFormula& b);
};

struct LetTyping {
  std::string symbol;
  TypePtr type;
  friend bool operator==(const LetTyping& a, const LetTyping& b);
};

struct LetDefinition {
  TermPtr lhs;
  TermPtr rhs;
  friend bool operator==(const LetDefinition& a, const LetDefinition& b);
};

struct LetFormula {
  std::vector<LetTyping> typings;
  std::vector<LetDefinition> definitions;
  TermPtr body;
  friend bool operator==(const LetFormula& a, const LetFormula& b);
};

struct BoolConstFormula {
  bool value = true;
  friend bool operator==(const BoolConstFormula&, const BoolConstFormula&) = default;
};

struct VariableFormula {
  std::string name;
  friend bool operator==(const VariableFormula&, const VariableFormula&) = default;
};

struct Formula {
  std::variant<AtomFormula, EqualityFormula, NotFormula, BinaryFormula, QuantifiedFormula,
               LambdaFormula, ApplyFormula, NcApplyFormula, ConditionalFormula, LetFormula,
               BoolConstFormula, VariableFormula>
      node;
  friend bool operator==(const Formula& a, const Formula& b) { return a.node == b.node; }
};

FormulaPtr make_atom(std::string symbol, std::vector<TermPtr> args = {});
FormulaPtr make_equality(TermPtr lhs, TermPtr rhs, bool negated = false);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_binary(BinaryOp op, FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_quantified(Quantifier q, std::vector<Binding> bindings, FormulaPtr body);
FormulaPtr make_lambda(std::vector<Binding> bindings, FormulaPtr body);
FormulaPtr make_apply(FormulaPtr head, TermPtr arg);
// Left-nested application head @ a1 @ ... @ an.
FormulaPtr make_apply(FormulaPtr head, const std::vector<TermPtr>& args);
FormulaPtr make_nc_apply(NcConnective conn, std::vector<TermPtr> args, SourcePos pos = {});
FormulaPtr make_conditional(FormulaPtr cond, TermPtr then_branch, TermPtr else_branch);
FormulaPtr make_let(std::vector<LetTyping> typings, std::vector<LetDefinition> defs, TermPtr body);
FormulaPtr make_bool(bool value);
FormulaPtr make_variable_formula(std::string name);

// Canonical conversions between formula and term position. A plain atom
// becomes a function term, a variable stays a variable, anything else is
// wrapped. to_formula is the inverse view used by semantic passes.
TermPtr to_term(const FormulaPtr& f);
// Returns null for numbers, distinct objects and tuples, which have no
// formula reading.
FormulaPtr to_formula(const TermPtr& t);

// Splits head @ a1 @ ... @ an into its head and arguments.
struct ApplicationSpine {
  FormulaPtr head;
  std::vector<TermPtr> args;
};
ApplicationSpine application_spine(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Logic specifications

struct OverrideKey {
  TermPtr term;
  std::optional<Surface> bracket;  // set when written as [#i], <#i> or /#i\ .
  friend bool operator==(const OverrideKey& a, const OverrideKey& b);
};

struct PropertyOverride {
  OverrideKey key;
  PropertyValuePtr value;
  friend bool operator==(const PropertyOverride& a, const PropertyOverride& b);
};

// A bracketed list: an optional leading default term and key == value pairs.
struct ListValue {
  TermPtr default_value;
  std::vector<PropertyOverride> overrides;
  friend bool operator==(const ListValue& a, const ListValue& b);
};

struct PropertyValue {
  std::variant<TermPtr, ListValue> node;
  friend bool operator==(const PropertyValue& a, const PropertyValue& b);
};

struct LogicProperty {
  std::string name;
  PropertyValuePtr value;
  friend bool operator==(const LogicProperty& a, const LogicProperty& b);
};

struct LogicSpec {
  std::string logic_name;
  std::vector<LogicProperty> properties;
  friend bool operator==(const LogicSpec& a, const LogicSpec& b) = default;
};

// ---------------------------------------------------------------------------
// Annotated formulas

enum class Language { Fof, Cnf, Tff, Thf };

// fof/cnf/tff units share the first-order grammar; thf units the higher-order one.
inline bool is_higher_order(Language l) { return l == Language::Thf; }

enum class RoleBase {
  Axiom,
  Hypothesis,
  Definition,
  Lemma,
  Theorem,
  Assumption,
  Conjecture,
  NegatedConjecture,
  Type,
  Logic
};
enum class Subrole { Local, Global };

struct Role {
  RoleBase base = RoleBase::Axiom;
  std::optional<Subrole> subrole;
  friend bool operator==(const Role&, const Role&) = default;
};

bool is_axiom_like(RoleBase r);
std::string role_name(const Role& r);
std::optional<Role> parse_role(std::string_view text);

struct TypeDecl {
  std::string symbol;
  TypePtr type;
  friend bool operator==(const TypeDecl& a, const TypeDecl& b);
};

using Payload = std::variant<FormulaPtr, TypeDecl, LogicSpec>;

struct AnnotatedFormula {
  Language language = Language::Tff;
  std::string name;
  Role role;
  Payload payload;
  std::optional<std::string> source;       // verbatim annotation text
  std::optional<std::string> useful_info;  // verbatim annotation text
  SourcePos pos;
  std::size_t begin_offset = 0;  // byte range of the unit in its file
  std::size_t end_offset = 0;

  const FormulaPtr* formula() const { return std::get_if<FormulaPtr>(&payload); }
  const TypeDecl* type_decl() const { return std::get_if<TypeDecl>(&payload); }
  const LogicSpec* logic_spec() const { return std::get_if<LogicSpec>(&payload); }

  // Structural: language, name, role and payload.
  friend bool operator==(const AnnotatedFormula& a, const AnnotatedFormula& b);
};

using Problem = std::vector<AnnotatedFormula>;

// ---------------------------------------------------------------------------
// Queries

std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> free_variables(const TermPtr& t);

struct NcOccurrence {
  std::size_t unit_index = 0;
  std::string unit_name;
  NcConnective conn;
  std::size_t arity = 0;
  SourcePos pos;
};

// Every NcApply node of the problem, in source order (pre-order, left to right).
std::vector<NcOccurrence> collect_nc_connectives(const Problem& problem);

bool contains_nc_apply(const FormulaPtr& f);

}  // namespace tptpnc

#endif  // TPTPNC_AST_HPP_
