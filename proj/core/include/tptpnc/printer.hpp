// Canonical TPTP text for AST values, plus a debugging tree dump.

#ifndef TPTPNC_PRINTER_HPP_
#define TPTPNC_PRINTER_HPP_

#include <string>

#include "tptpnc/ast.hpp"

namespace tptpnc {

std::string print_type(const TypePtr& t, Language language = Language::Tff);
std::string print_term(const TermPtr& t, Language language = Language::Tff);
std::string print_formula(const FormulaPtr& f, Language language = Language::Tff);
std::string print_connective(const NcConnective& c, Language language = Language::Tff);
std::string print_logic_spec(const LogicSpec& spec);

// `lang(name, role,\n    payload).` with source/useful_info appended verbatim.
std::string print_unit(const AnnotatedFormula& u);
// Units separated by a blank line; ends with a newline when non-empty.
std::string print_problem(const Problem& p);

// Indented s-expression rendering of the tree, one node per line.
std::string dump_unit(const AnnotatedFormula& u);
std::string dump_problem(const Problem& p);

std::string language_keyword(Language l);

}  // namespace tptpnc

#endif  // TPTPNC_PRINTER_HPP_
