// Shallow embedding of $modal problems into classical THF, and the relational
// standard translation for the propositional fragment.
//
// Naming: worlds have type `mworld`, the current world is `mactual`, the
// accessibility relation of index #i is `mrel_i` (plain `mrel` for the default
// index), existence predicates are `meexists_<type>`, lifted symbols get `_at`.
// Predicates take the world last; flexible functions take it first.

#ifndef TPTPNC_EMBEDDING_HPP_
#define TPTPNC_EMBEDDING_HPP_

#include <map>
#include <string>
#include <vector>

#include "tptpnc/ast.hpp"
#include "tptpnc/logic_spec.hpp"
#include "tptpnc/signature.hpp"

namespace tptpnc {

inline constexpr const char* kWorldType = "mworld";
inline constexpr const char* kCurrentWorld = "mactual";

std::string relation_name(const std::string& index_key);  // "" -> mrel
std::string existence_name(const std::string& type_name);  // $i -> meexists_i
std::string lifted_symbol_name(const std::string& symbol);  // p -> p_at, 'a b' -> 'a b_at'

// $o -> mworld > $o, applied through every argument and result position.
TypePtr lift_type(const TypePtr& t);

struct LiftedSymbol {
  std::string name;
  TypePtr type;
  bool world_dependent = false;
};

// Lifted name and type of a user symbol. Predicates are always world
// dependent; functions only when flexible. Throws EmbedError for symbols
// with polymorphic or $tType-valued types.
LiftedSymbol lift_symbol(const std::string& symbol, const TypePtr& type, const ModalSemantics& sem);

// Capture-avoiding beta normalization.
FormulaPtr beta_normalize(const FormulaPtr& f);
TermPtr beta_normalize(const TermPtr& t);

class Embedder {
 public:
  Embedder(const Signature& sig, const ModalSemantics& sem, std::string world_var_prefix = "MW");

  // `f` (beta-normal) evaluated at `world`, a term of type mworld. `env`
  // types free variables of `f` by their original types.
  FormulaPtr at(const FormulaPtr& f, const TermPtr& world, const Typer::Env& env = {}) const;
  // ^[MW0:mworld] : at(f, MW0)
  FormulaPtr lifted(const FormulaPtr& f) const;

  const std::string& world_var_prefix() const { return prefix_; }

 private:
  const Signature* sig_;
  const ModalSemantics* sem_;
  Typer typer_;
  std::string prefix_;

  FormulaPtr at(const FormulaPtr& f, const TermPtr& world, const Typer::Env& env, int depth) const;
  TermPtr lift_term(const TermPtr& t, const TypePtr& type, const TermPtr& world, const Typer::Env& env, int depth) const;
  FormulaPtr lift_application(const FormulaPtr& f, const TermPtr& world, const Typer::Env& env, int depth) const;
  std::vector<Binding> lift_bindings(const std::vector<Binding>& bindings) const;
  std::string world_var(int depth) const { return prefix_ + std::to_string(depth); }
};

FormulaPtr embed_formula(const FormulaPtr& f, const Signature& sig, const ModalSemantics& sem);

// Frame axioms for the relation `rel` per the conditions. THF output uses
// curried application, TFF output plain atoms.
std::vector<AnnotatedFormula> frame_axioms(const std::string& rel, const std::set<FrameCondition>& conditions,
                                           Language dialect = Language::Thf);
FormulaPtr frame_condition_formula(const std::string& rel, FrameCondition c, Language dialect = Language::Thf);

// Nonemptiness and monotonicity axioms for the given base types over the
// given relations.
std::vector<AnnotatedFormula> domain_axioms(const ModalSemantics& sem, const std::vector<std::string>& types,
                                            const std::vector<std::string>& relations);

struct EmbedOutput {
  Problem units;                                // classical THF
  std::map<std::string, LiftedSymbol> symbols;  // original symbol -> lifted
  std::string world_type = kWorldType;
  std::string current_world = kCurrentWorld;
  std::map<std::string, std::string> relations;  // index key -> relation name
  std::map<std::string, std::string> existence;  // base type -> existence predicate
  std::vector<std::string> header;              // comment lines, without "% "
  std::vector<std::string> warnings;
};

EmbedOutput embed_problem(const Problem& problem, const ModalSemantics& sem);
// Classical problems pass through unchanged with a warning.
EmbedOutput embed_problem(const CheckedProblem& checked);

// Header comments followed by the units.
std::string print_embed_output(const EmbedOutput& out);

// Propositional standard translation at the world term `world`, as a TFF
// formula over `p_at(W)` and `mrel(W,V)` atoms.
FormulaPtr standard_translation(const FormulaPtr& f, const ModalSemantics& sem, const TermPtr& world);
// The whole problem in TFF: world sort, relations, frame axioms, units.
Problem translate_problem(const CheckedProblem& checked);

}  // namespace tptpnc

#endif  // TPTPNC_EMBEDDING_HPP_
