// Symbol signatures (declared plus default-typed) and a type checker shared by
// the embedding and the oracle.

#ifndef TPTPNC_SIGNATURE_HPP_
#define TPTPNC_SIGNATURE_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tptpnc/ast.hpp"

namespace tptpnc {

struct Signature {
  std::vector<std::string> sorts;        // user types declared as $tType, in order
  std::map<std::string, TypePtr> types;  // symbol -> type, canonical curried form
  std::vector<std::string> order;        // symbols in order of declaration or first use
  std::set<std::string> defaulted;       // symbols typed by the default rule

  const TypePtr* find(const std::string& symbol) const;
  void add(const std::string& symbol, const TypePtr& type, bool by_default = false);
  bool is_sort(const std::string& name) const;
};

// Type declarations plus default typing of undeclared symbols in tff/fof/cnf
// units: n-ary predicates get ($i * ... * $i) > $o, functions ... > $i.
// Throws EmbedError(TypeError) on inconsistent use.
Signature build_signature(const Problem& problem);

bool same_type(const TypePtr& a, const TypePtr& b);
TypePtr number_type(NumberKind kind);
bool is_defined_type(const std::string& name);  // $o, $i, $int, ...

// Result type of a function type after `n` arguments, in curried form.
TypePtr apply_type(const TypePtr& fn, std::size_t n);
// Argument types of a function type (empty for base types).
std::vector<TypePtr> argument_types(const TypePtr& fn);
// Final result after all arguments.
TypePtr final_result_type(const TypePtr& fn);

class Typer {
 public:
  using Env = std::map<std::string, TypePtr>;

  explicit Typer(const Signature& sig) : sig_(&sig) {}

  // Both throw EmbedError(TypeError). A formula used as a term is typed as
  // such: atoms and applications by their symbol, connectives as $o.
  TypePtr term_type(const TermPtr& t, const Env& env) const;
  TypePtr formula_type(const FormulaPtr& f, const Env& env) const;

  // Checks that `f` is a well-typed formula of type $o.
  void check_formula(const FormulaPtr& f, const Env& env = {}) const;

  static Env bind(const Env& env, const std::vector<Binding>& bindings);

 private:
  const Signature* sig_;

  TypePtr symbol_application(const std::string& symbol, const std::vector<TermPtr>& args, const Env& env) const;
  TypePtr apply_to(const TypePtr& fn, const std::vector<TermPtr>& args, const Env& env, const std::string& what) const;
};

// Type-checks a whole problem: every formula unit must be a closed formula of
// type $o under the problem's signature.
void type_check(const Problem& problem);

}  // namespace tptpnc

#endif  // TPTPNC_SIGNATURE_HPP_
