// Finite Kripke models over a fixed first-order layout.

#ifndef TPTPNC_KRIPKE_HPP_
#define TPTPNC_KRIPKE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tptpnc/ast.hpp"
#include "tptpnc/logic_spec.hpp"
#include "tptpnc/signature.hpp"

namespace tptpnc {

struct SortInfo {
  std::string name;
  DomainKind domain = DomainKind::Constant;
  std::vector<std::string> literals;  // literal i denotes element i
};

struct SymbolInfo {
  std::string name;
  std::vector<int> arg_sorts;
  int result_sort = -1;  // -1 for $o
  bool flexible = true;  // predicates always are
  bool predicate() const { return result_sort < 0; }
};

struct IndexInfo {
  std::string key;  // "" for the default index
  std::set<FrameCondition> conditions;
};

// Everything about a model that does not depend on sizes or interpretations.
struct ModelLayout {
  std::vector<SortInfo> sorts;
  std::vector<SymbolInfo> symbols;
  std::vector<IndexInfo> indices;

  int sort_id(const std::string& name) const;    // -1 if absent
  int symbol_id(const std::string& name) const;  // -1 if absent
  int index_id(const std::string& key) const;    // -1 if absent
  // Sort and element of a literal given by its printed lexeme.
  std::pair<int, int> literal(const std::string& lexeme) const;  // {-1,-1} if absent
  std::size_t min_carrier(int sort) const { return std::max<std::size_t>(1, sorts[sort].literals.size()); }
};

// Layout for a checked first-order problem: sorts from declarations, binders
// and literals; one index per key used or configured, the default first.
// Throws EmbedError(UnsupportedConstruct) for higher-order symbols.
ModelLayout make_layout(const Problem& problem, const ModalSemantics& sem);
ModelLayout make_layout(const Signature& sig, const ModalSemantics& sem, const std::set<std::string>& extra_sorts,
                        const std::set<std::string>& index_keys,
                        const std::vector<std::pair<std::string, std::string>>& literals);  // {lexeme, sort}

struct KripkeModel {
  std::shared_ptr<const ModelLayout> layout;
  int worlds = 1;
  int current = 0;
  std::vector<int> carrier;                  // per sort
  std::vector<std::vector<std::uint8_t>> access;  // per index, worlds * worlds
  std::vector<std::vector<std::uint8_t>> domain;  // per sort, worlds * carrier
  std::vector<std::vector<int>> tables;      // per symbol, see cell()
  std::vector<int> cells_per_world;          // per symbol

  KripkeModel() = default;
  KripkeModel(std::shared_ptr<const ModelLayout> layout, int worlds, std::vector<int> carrier);

  bool accessible(int index, int w, int v) const { return access[index][w * worlds + v] != 0; }
  bool exists(int sort, int w, int e) const { return domain[sort][w * carrier[sort] + e] != 0; }
  // Table offset of symbol `s` at world `w` (ignored when rigid) for the
  // argument tuple `args`, first argument most significant.
  std::size_t cell(int s, int w, const int* args) const {
    const SymbolInfo& info = layout->symbols[s];
    std::size_t off = 0;
    for (std::size_t i = 0; i < info.arg_sorts.size(); ++i) off = off * carrier[info.arg_sorts[i]] + args[i];
    return info.flexible ? w * cells_per_world[s] + off : off;
  }
};

// Stable human-readable text: worlds, relations as edge lists, per-world
// domains and interpretation tables.
std::string serialize_model(const KripkeModel& m);

}  // namespace tptpnc

#endif  // TPTPNC_KRIPKE_HPP_
