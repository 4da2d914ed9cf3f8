// Kripke evaluation of modal formulas and Tarskian evaluation of classical
// formulas over finite structures. Both compile a formula once against a
// layout and then evaluate it on any number of models of that layout.

#ifndef TPTPNC_EVALUATE_HPP_
#define TPTPNC_EVALUATE_HPP_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tptpnc/ast.hpp"
#include "tptpnc/kripke.hpp"
#include "tptpnc/logic_spec.hpp"

namespace tptpnc {

class Circuit;

// A model whose parts are circuit literals rather than values. Function
// cells hold one literal per carrier element, so the value of cell k of a
// function with result carrier C is element e when literal k * C + e holds.
struct SymbolicModel {
  std::shared_ptr<const ModelLayout> layout;
  int worlds = 1;
  std::vector<int> carrier;
  std::vector<std::vector<int>> access;  // [index][w * worlds + v]
  std::vector<std::vector<int>> domain;  // [sort][w * carrier + e]
  std::vector<std::vector<int>> tables;  // [symbol][cell] or [symbol][cell * C + e]
  std::vector<int> cells_per_world;

  // Same cell numbering as KripkeModel.
  std::size_t cell(int s, int w, const int* args) const {
    const SymbolInfo& info = layout->symbols[s];
    std::size_t off = 0;
    for (std::size_t i = 0; i < info.arg_sorts.size(); ++i) off = off * carrier[info.arg_sorts[i]] + args[i];
    return info.flexible ? w * cells_per_world[s] + off : off;
  }
};

class ModalProgram {
 public:
  // `f` is canonical (long-form connectives), first-order, beta-normal.
  // Free variables listed in `free` take element values (or world masks
  // for $o) from the env passed to eval, in order.
  ModalProgram(const ModelLayout& layout, LogicFamily family, const FormulaPtr& f,
               const std::vector<Binding>& free = {});
  ModalProgram(const ModalProgram&);
  ModalProgram(ModalProgram&&) noexcept;
  ModalProgram& operator=(const ModalProgram&);
  ModalProgram& operator=(ModalProgram&&) noexcept;
  ~ModalProgram();

  bool eval(const KripkeModel& m, int world, const int* env = nullptr) const;

  // The literal that holds exactly when the formula is true at `world` of
  // the model the symbolic model's literals describe.
  int ground(Circuit& c, const SymbolicModel& m, int world, const int* env = nullptr) const;

 private:
  struct Node;
  struct TermNode;
  struct Ctx;
  struct GroundCtx;
  class Compiler;

  std::vector<Node> nodes_;
  std::vector<TermNode> terms_;
  std::vector<int> args_;
  int root_ = 0;
  int slots_ = 0;
  int free_ = 0;

  bool node(int n, int w, Ctx& c) const;
  int term(int t, int w, Ctx& c) const;
  int ground_node(int n, int w, GroundCtx& c) const;
  std::vector<int> ground_term(int t, int w, GroundCtx& c) const;
};

bool eval_modal(const KripkeModel& m, int world, const FormulaPtr& f, LogicFamily family = LogicFamily::Modal);

// A finite many-sorted structure with total tables. Predicates are tables
// with result_sort -1 and 0/1 entries.
struct ClassicalStructure {
  struct Sort {
    std::string name;
    int size = 1;
  };
  struct Symbol {
    std::string name;
    std::vector<int> arg_sorts;
    int result_sort = -1;
    std::vector<int> table;  // first argument most significant
  };
  std::vector<Sort> sorts;
  std::vector<Symbol> symbols;
  std::map<std::string, std::pair<int, int>> literals;  // lexeme -> {sort, element}

  int sort_id(const std::string& name) const;
  int symbol_id(const std::string& name) const;
  std::size_t offset(const Symbol& s, const int* args) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < s.arg_sorts.size(); ++i) off = off * sorts[s.arg_sorts[i]].size + args[i];
    return off;
  }
};

// The structure the embedding describes: mworld, mactual, mrel_*,
// meexists_* and the lifted symbols.
ClassicalStructure translate_model(const KripkeModel& m);

class ClassicalProgram {
 public:
  // Free variables take element values from the env, in order.
  ClassicalProgram(const ClassicalStructure& schema, const FormulaPtr& f, const std::vector<std::string>& free = {});
  ClassicalProgram(const ClassicalProgram&);
  ClassicalProgram(ClassicalProgram&&) noexcept;
  ClassicalProgram& operator=(const ClassicalProgram&);
  ClassicalProgram& operator=(ClassicalProgram&&) noexcept;
  ~ClassicalProgram();

  bool eval(const ClassicalStructure& s, const int* env = nullptr) const;

 private:
  struct Node;
  struct TermNode;
  struct Ctx;
  class Compiler;

  std::vector<Node> nodes_;
  std::vector<TermNode> terms_;
  std::vector<int> args_;
  int root_ = 0;
  int slots_ = 0;
  int free_ = 0;
  std::vector<std::vector<int>> pred_sorts_;  // argument sorts of predicate variables

  bool node(int n, Ctx& c) const;
  int term(int t, Ctx& c) const;
};

bool eval_classical(const ClassicalStructure& s, const FormulaPtr& f, const std::map<std::string, int>& env = {});

}  // namespace tptpnc

#endif  // TPTPNC_EVALUATE_HPP_
