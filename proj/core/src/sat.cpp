#include "tptpnc/sat.hpp"

#include <algorithm>

namespace tptpnc {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

int Solver::new_var() {
  assigns_.push_back(-1);
  levels_.push_back(0);
  reasons_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return num_vars();
}

void Solver::enqueue(Lit l, int reason) {
  assigns_[l >> 1] = static_cast<std::int8_t>(!(l & 1));
  levels_[l >> 1] = level();
  reasons_[l >> 1] = reason;
  trail_.push_back(l);
}

void Solver::attach(int c) {
  watches_[clauses_[c][0]].push_back(c);
  watches_[clauses_[c][1]].push_back(c);
}

void Solver::add_clause(std::vector<int> dimacs) {
  if (!ok_) return;
  std::vector<Lit> lits;
  for (int d : dimacs) lits.push_back(internal(d));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1]) return;  // tautology
    std::int8_t v = lit_value_(lits[i]);
    if (v == 1) return;
    if (v == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) ok_ = false;
    return;
  }
  clauses_.push_back(std::move(kept));
  attach(static_cast<int>(clauses_.size()) - 1);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit falsified = trail_[qhead_++] ^ 1;
    std::vector<int>& ws = watches_[falsified];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      std::vector<Lit>& c = clauses_[ci];
      if (c[0] == falsified) std::swap(c[0], c[1]);
      if (lit_value_(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k)
        if (lit_value_(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value_(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump(int var) {
  if ((activity_[var] += var_inc_) > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.assign(1, 0);
  int path = 0;
  Lit p = -1;
  std::size_t idx = trail_.size();
  do {
    const std::vector<Lit>& c = clauses_[confl];
    for (std::size_t j = p < 0 ? 0 : 1; j < c.size(); ++j) {
      int v = c[j] >> 1;
      if (seen_[v] || levels_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (levels_[v] >= level()) ++path;
      else learnt.push_back(c[j]);
    }
    while (!seen_[trail_[--idx] >> 1]) {
    }
    p = trail_[idx];
    confl = reasons_[p >> 1];
    seen_[p >> 1] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1;

  bt_level = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (levels_[learnt[i] >> 1] > bt_level) {
      bt_level = levels_[learnt[i] >> 1];
      max_i = i;
    }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[l >> 1] = 0;
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
    assigns_[trail_[i] >> 1] = -1;
    reasons_[trail_[i] >> 1] = -1;
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

Solver::Lit Solver::pick_branch() const {
  int best = -1;
  for (int v = 0; v < num_vars(); ++v)
    if (assigns_[v] < 0 && (best < 0 || activity_[v] > activity_[best])) best = v;
  return best < 0 ? -1 : 2 * best + 1;  // false first
}

bool Solver::solve(const std::vector<int>& assumptions) {
  if (!ok_) return false;
  if (propagate() >= 0) {
    ok_ = false;
    return false;
  }
  std::vector<Lit> assume;
  for (int a : assumptions) assume.push_back(internal(a));

  int restarts = 0;
  std::vector<Lit> learnt;
  while (true) {
    long budget = static_cast<long>(100 * luby(2, restarts++));
    long conflicts = 0;
    bool restart = false;
    while (!restart) {
      int confl = propagate();
      if (confl >= 0) {
        if (level() == 0) {
          ok_ = false;
          return false;
        }
        int bt;
        analyze(confl, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          clauses_.push_back(learnt);
          int ci = static_cast<int>(clauses_.size()) - 1;
          attach(ci);
          enqueue(learnt[0], ci);
        }
        var_inc_ /= 0.95;
        restart = ++conflicts >= budget;
        continue;
      }
      Lit next = -1;
      while (level() < static_cast<int>(assume.size())) {
        Lit a = assume[level()];
        std::int8_t v = lit_value_(a);
        if (v == 1) {
          trail_lim_.push_back(static_cast<int>(trail_.size()));
        } else if (v == 0) {
          cancel_until(0);
          return false;
        } else {
          next = a;
          break;
        }
      }
      if (next < 0) next = pick_branch();
      if (next < 0) {
        model_ = assigns_;
        cancel_until(0);
        return true;
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(next, -1);
    }
    cancel_until(0);
  }
}

Circuit::Circuit(Solver& solver) : solver_(solver), true_(solver.new_var()) { solver_.add_clause({true_}); }

int Circuit::and_of(std::vector<int> xs) {
  std::vector<int> ops;
  for (int x : xs) {
    if (x == bottom()) return bottom();
    if (x != top()) ops.push_back(x);
  }
  std::sort(ops.begin(), ops.end());
  ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
  for (int x : ops)
    if (std::binary_search(ops.begin(), ops.end(), -x)) return bottom();
  if (ops.empty()) return top();
  if (ops.size() == 1) return ops[0];
  auto it = and_cache_.find(ops);
  if (it != and_cache_.end()) return it->second;
  int g = fresh();
  std::vector<int> big{g};
  for (int x : ops) {
    solver_.add_clause({-g, x});
    big.push_back(-x);
  }
  solver_.add_clause(big);
  and_cache_.emplace(std::move(ops), g);
  return g;
}

int Circuit::or_of(std::vector<int> xs) {
  for (int& x : xs) x = -x;
  return -and_of(std::move(xs));
}

int Circuit::iff(int a, int b) {
  if (a == top()) return b;
  if (a == bottom()) return -b;
  if (b == top()) return a;
  if (b == bottom()) return -a;
  if (a == b) return top();
  if (a == -b) return bottom();
  bool flip = false;
  if (a < 0) {
    a = -a;
    flip = !flip;
  }
  if (b < 0) {
    b = -b;
    flip = !flip;
  }
  if (a > b) std::swap(a, b);
  auto key = std::make_pair(a, b);
  auto it = iff_cache_.find(key);
  int g;
  if (it != iff_cache_.end()) {
    g = it->second;
  } else {
    g = fresh();
    solver_.add_clause({-g, -a, b});
    solver_.add_clause({-g, a, -b});
    solver_.add_clause({g, a, b});
    solver_.add_clause({g, -a, -b});
    iff_cache_.emplace(key, g);
  }
  return flip ? -g : g;
}

}  // namespace tptpnc
