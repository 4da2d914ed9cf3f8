// A small deterministic CDCL SAT solver and a Tseitin circuit builder on top
// of it. Literals use DIMACS conventions: variable v > 0, negation -v.

#ifndef TPTPNC_SAT_HPP_
#define TPTPNC_SAT_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace tptpnc {

class Solver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  std::size_t num_clauses() const { return clauses_.size(); }

  // May be called between solves; the solver is always back at level 0.
  void add_clause(std::vector<int> lits);

  // Satisfiable under the assumptions? A false result with no assumptions
  // means the clause set itself is unsatisfiable.
  bool solve(const std::vector<int>& assumptions = {});

  // Model of the last successful solve.
  bool value(int var) const { return model_[var - 1] != 0; }
  bool lit_value(int lit) const { return lit > 0 ? value(lit) : !value(-lit); }

 private:
  using Lit = int;  // 2 * var + sign, var 0-based
  static Lit internal(int dimacs) { return dimacs > 0 ? 2 * (dimacs - 1) : 2 * (-dimacs - 1) + 1; }

  std::int8_t lit_value_(Lit l) const {
    std::int8_t v = assigns_[l >> 1];
    return v < 0 ? v : static_cast<std::int8_t>(v ^ (l & 1));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause or -1
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  void cancel_until(int lvl);
  void attach(int c);
  void bump(int var);
  Lit pick_branch() const;

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // per literal: clauses watching it
  std::vector<std::int8_t> assigns_;       // -1 unassigned, 0 false, 1 true
  std::vector<int> levels_;
  std::vector<int> reasons_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<std::int8_t> model_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool ok_ = true;
};

// Hash-consed gates with constant folding. Constants are the literals of a
// variable fixed to true.
class Circuit {
 public:
  explicit Circuit(Solver& solver);

  Solver& solver() { return solver_; }
  int top() const { return true_; }
  int bottom() const { return -true_; }
  int constant(bool b) const { return b ? true_ : -true_; }
  bool is_constant(int l) const { return l == true_ || l == -true_; }
  std::size_t gates() const { return and_cache_.size() + iff_cache_.size(); }

  int fresh() { return solver_.new_var(); }
  int and_of(std::vector<int> xs);
  int or_of(std::vector<int> xs);
  int and2(int a, int b) { return and_of({a, b}); }
  int or2(int a, int b) { return or_of({a, b}); }
  int implies(int a, int b) { return or_of({-a, b}); }
  int iff(int a, int b);
  int xor2(int a, int b) { return -iff(a, b); }

 private:
  Solver& solver_;
  int true_;
  std::map<std::vector<int>, int> and_cache_;
  std::map<std::pair<int, int>, int> iff_cache_;
};

}  // namespace tptpnc

#endif  // TPTPNC_SAT_HPP_
