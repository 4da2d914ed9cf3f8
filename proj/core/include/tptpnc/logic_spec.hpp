// Validation of $modal-family logic specifications and problem-level checks.

#ifndef TPTPNC_LOGIC_SPEC_HPP_
#define TPTPNC_LOGIC_SPEC_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tptpnc/ast.hpp"

namespace tptpnc {

enum class LogicFamily { Modal, Alethic, Deontic, Epistemic };
enum class Rigidity { Rigid, Flexible };
enum class DomainKind { Constant, Varying, Cumulative, Decreasing };

enum class ModalSystem { K, KB, K4, K5, K45, KB5, D, DB, D4, D5, D45, T, B, S4, S5, S5U };
enum class ModalAxiom { K, T, B, D, Four, Five, CD, BoxM, C4, C };

enum class FrameCondition {
  Reflexive,
  Symmetric,
  Serial,
  Transitive,
  Euclidean,
  Functional,
  ShiftReflexive,
  Dense,
  Confluent,
  Universal
};

struct ModalitySpec {
  std::variant<ModalSystem, std::set<ModalAxiom>> node = ModalSystem::K;

  // Axiom set including the implicit K.
  std::set<ModalAxiom> axioms() const;
  bool universal() const { return std::holds_alternative<ModalSystem>(node) && std::get<ModalSystem>(node) == ModalSystem::S5U; }
  friend bool operator==(const ModalitySpec&, const ModalitySpec&) = default;
};

std::set<ModalAxiom> system_axioms(ModalSystem s);
std::set<FrameCondition> frame_conditions(const ModalitySpec& m);

struct ModalSemantics {
  LogicFamily family = LogicFamily::Modal;
  std::string spec_name;  // name of the logic unit, empty when validated standalone

  Rigidity default_rigidity = Rigidity::Rigid;
  std::map<std::string, Rigidity> rigidity_overrides;
  DomainKind default_domain = DomainKind::Constant;
  std::map<std::string, DomainKind> domain_overrides;
  ModalitySpec default_modality;
  // Keyed by index_key() of the index term.
  std::map<std::string, ModalitySpec> modality_overrides;

  std::vector<std::string> warnings;

  Rigidity rigidity(const std::string& symbol) const;
  DomainKind domain(const std::string& type_name) const;
  const ModalitySpec& modality(const std::string& index) const;
  const ModalitySpec& modality(const TermPtr& index) const;
};

// Canonical spelling of a connective index ("" for no index).
std::string index_key(const TermPtr& index);

// `pos` locates diagnostics, normally the logic unit's position.
ModalSemantics validate_spec(const LogicSpec& spec, SourcePos pos = {});

std::string_view family_name(LogicFamily f);
std::string_view rigidity_name(Rigidity r);
std::string_view domain_kind_name(DomainKind d);
std::string modal_system_name(ModalSystem s);  // K, KB, ..., S5U
std::string modal_axiom_name(ModalAxiom a);    // K, T, ..., 4, 5, CD, ...
std::string_view frame_condition_name(FrameCondition c);
std::string modality_name(const ModalitySpec& m);

// Canonical long-form names of the box and diamond in a family.
std::string box_name(LogicFamily f);
std::string dia_name(LogicFamily f);

enum class ConnectiveKind { Box, Diamond, Unsupported };

// Classifies a long-form connective accepted in the family. Throws SpecError
// (ConnectiveNotInFamily) if the family does not provide the connective.
ConnectiveKind classify_connective(const NcConnective& c, LogicFamily f, SourcePos pos = {});

enum class Locality { Local, Global };
Locality locality_of(const Role& role);

// Short forms become long forms named per family; duality is not rewritten.
NcConnective resolve_connective(const NcConnective& c, const ModalSemantics& sem, SourcePos pos = {});
FormulaPtr resolve_short_forms(const FormulaPtr& f, const ModalSemantics& sem);
Problem resolve_short_forms(const Problem& problem, const ModalSemantics& sem);

struct CheckedProblem {
  std::optional<ModalSemantics> semantics;  // absent for classical problems
  Problem problem;                          // short forms resolved; logic unit kept in place
};

// Locates the logic unit, validates it against the problem (override keys,
// connectives, indices) and canonicalizes connectives.
CheckedProblem check_problem(const Problem& problem);

}  // namespace tptpnc

#endif  // TPTPNC_LOGIC_SPEC_HPP_
