#include "tptpnc/decide.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "tptpnc/detail/overloaded.hpp"
#include "tptpnc/diagnostics.hpp"
#include "tptpnc/embedding.hpp"
#include "tptpnc/evaluate.hpp"
#include "tptpnc/printer.hpp"
#include "tptpnc/sat.hpp"

namespace tptpnc {

using detail::overloaded;

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Theorem: return "Theorem";
    case Status::CounterSatisfiable: return "CounterSatisfiable";
    case Status::Satisfiable: return "Satisfiable";
    case Status::Unsatisfiable: return "Unsatisfiable";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

struct Unit {
  std::string name;
  ModalProgram program;
  bool global;
};

struct Units {
  std::vector<Unit> premises;
  std::vector<Unit> conjectures;
};

Units compile_units(const Problem& problem, const ModelLayout& layout, LogicFamily family) {
  Units out;
  for (const auto& u : problem) {
    const FormulaPtr* f = u.formula();
    if (!f) continue;
    try {
      Unit unit{u.name, ModalProgram(layout, family, beta_normalize(*f)), locality_of(u.role) == Locality::Global};
      if (u.role.base == RoleBase::Conjecture) out.conjectures.push_back(std::move(unit));
      else out.premises.push_back(std::move(unit));
    } catch (const Error& e) {
      SourcePos pos = e.pos().line ? e.pos() : u.pos;
      throw EmbedError(e.kind(), pos, "in '" + u.name + "': " + e.message());
    }
  }
  return out;
}

// Classical frame formula over worlds with the single relation `r`.
int ground_frame(Circuit& c, const FormulaPtr& f, std::map<std::string, int>& env, const std::vector<int>& r, int W) {
  auto world_of = [&](const TermPtr& t) {
    const auto* v = std::get_if<VariableTerm>(&t->node);
    if (!v || !env.count(v->name)) throw Error(ErrorKind::InternalError, {}, "unexpected term in a frame axiom");
    return env.at(v->name);
  };
  return std::visit(
      overloaded{
          [&](const BoolConstFormula& b) { return c.constant(b.value); },
          [&](const AtomFormula& a) {
            if (a.symbol != "r" || a.args.size() != 2)
              throw Error(ErrorKind::InternalError, {}, "unexpected atom in a frame axiom");
            return r[world_of(a.args[0]) * W + world_of(a.args[1])];
          },
          [&](const EqualityFormula& e) {
            bool same = world_of(e.lhs) == world_of(e.rhs);
            return c.constant(same != e.negated);
          },
          [&](const NotFormula& n) { return -ground_frame(c, n.operand, env, r, W); },
          [&](const BinaryFormula& b) {
            int l = ground_frame(c, b.lhs, env, r, W), rr = ground_frame(c, b.rhs, env, r, W);
            switch (b.op) {
              case BinaryOp::And: return c.and2(l, rr);
              case BinaryOp::Or: return c.or2(l, rr);
              case BinaryOp::Implies: return c.implies(l, rr);
              case BinaryOp::Implied: return c.implies(rr, l);
              case BinaryOp::Iff: return c.iff(l, rr);
              case BinaryOp::Xor: return c.xor2(l, rr);
            }
            return c.bottom();
          },
          [&](const QuantifiedFormula& q) {
            std::function<int(std::size_t, std::map<std::string, int>&)> rec =
                [&](std::size_t i, std::map<std::string, int>& scope) -> int {
              if (i == q.bindings.size()) return ground_frame(c, q.body, scope, r, W);
              std::vector<int> parts;
              for (int w = 0; w < W; ++w) {
                std::map<std::string, int> inner = scope;
                inner[q.bindings[i].name] = w;
                parts.push_back(rec(i + 1, inner));
              }
              return q.quantifier == Quantifier::Forall ? c.and_of(parts) : c.or_of(parts);
            };
            return rec(0, env);
          },
          [&](const auto&) -> int { throw Error(ErrorKind::InternalError, {}, "unexpected construct in a frame axiom"); },
      },
      f->node);
}

int frame_condition(Circuit& c, FrameCondition cond, const std::vector<int>& r, int W, FrameMode mode) {
  if (mode == FrameMode::Axioms) {
    std::map<std::string, int> env;
    return ground_frame(c, frame_condition_formula("r", cond, Language::Tff), env, r, W);
  }
  auto R = [&](int w, int v) { return r[w * W + v]; };
  std::vector<int> all;
  for (int w = 0; w < W; ++w)
    for (int v = 0; v < W; ++v) {
      switch (cond) {
        case FrameCondition::Reflexive:
          if (w == v) all.push_back(R(w, w));
          break;
        case FrameCondition::Symmetric: all.push_back(c.implies(R(w, v), R(v, w))); break;
        case FrameCondition::Serial:
          if (v == 0) {
            std::vector<int> succ;
            for (int u = 0; u < W; ++u) succ.push_back(R(w, u));
            all.push_back(c.or_of(succ));
          }
          break;
        case FrameCondition::Transitive:
          for (int u = 0; u < W; ++u) all.push_back(c.implies(c.and2(R(w, v), R(v, u)), R(w, u)));
          break;
        case FrameCondition::Euclidean:
          for (int u = 0; u < W; ++u) all.push_back(c.implies(c.and2(R(w, v), R(w, u)), R(v, u)));
          break;
        case FrameCondition::Functional:
          for (int u = v + 1; u < W; ++u) all.push_back(-c.and2(R(w, v), R(w, u)));
          break;
        case FrameCondition::ShiftReflexive: all.push_back(c.implies(R(w, v), R(v, v))); break;
        case FrameCondition::Dense: {
          std::vector<int> mid;
          for (int u = 0; u < W; ++u) mid.push_back(c.and2(R(w, u), R(u, v)));
          all.push_back(c.implies(R(w, v), c.or_of(mid)));
          break;
        }
        case FrameCondition::Confluent:
          for (int u = 0; u < W; ++u) {
            std::vector<int> join;
            for (int x = 0; x < W; ++x) join.push_back(c.and2(R(v, x), R(u, x)));
            all.push_back(c.implies(c.and2(R(w, v), R(w, u)), c.or_of(join)));
          }
          break;
        case FrameCondition::Universal: all.push_back(R(w, v)); break;
      }
    }
  return c.and_of(all);
}

// Decision variables of one grounding in enumeration digit order.
struct Digit {
  std::vector<int> choices;  // literals tried in order; exactly one holds for functions
};

struct Grounding {
  Solver solver;
  std::unique_ptr<Circuit> circuit;
  SymbolicModel model;
  std::vector<Digit> digits;
};

std::unique_ptr<Grounding> ground(const std::shared_ptr<const ModelLayout>& layout, const Units& units, int W,
                                  const std::vector<int>& sizes, const DecideOptions& options) {
  auto g = std::make_unique<Grounding>();
  g->circuit = std::make_unique<Circuit>(g->solver);
  Circuit& c = *g->circuit;
  Solver& s = g->solver;
  SymbolicModel& m = g->model;
  m.layout = layout;
  m.worlds = W;
  m.carrier = sizes;
  auto check_cap = [&] {
    if (s.num_clauses() > options.cap)
      throw ResourceError("grounding with " + std::to_string(W) + " worlds exceeds " + std::to_string(options.cap) +
                          " clauses; lower the bounds");
  };

  for (const auto& idx : layout->indices) {
    std::vector<int> r;
    for (int k = 0; k < W * W; ++k) {
      r.push_back(c.fresh());
      g->digits.push_back({{-r.back(), r.back()}});
    }
    for (FrameCondition cond : idx.conditions) s.add_clause({frame_condition(c, cond, r, W, options.frame_mode)});
    m.access.push_back(std::move(r));
  }

  for (std::size_t si = 0; si < layout->sorts.size(); ++si) {
    const int C = sizes[si];
    std::vector<int> d(static_cast<std::size_t>(W * C), c.top());
    if (layout->sorts[si].domain != DomainKind::Constant) {
      for (int w = 0; w < W; ++w) {
        std::vector<int> some;
        for (int e = 0; e < C; ++e) some.push_back(d[w * C + e] = c.fresh());
        s.add_clause(some);
        for (int e = C - 1; e >= 0; --e) g->digits.push_back({{-d[w * C + e], d[w * C + e]}});
      }
    }
    m.domain.push_back(std::move(d));
  }
  for (std::size_t si = 0; si < layout->sorts.size(); ++si) {
    DomainKind kind = layout->sorts[si].domain;
    if (kind != DomainKind::Cumulative && kind != DomainKind::Decreasing) continue;
    const int C = sizes[si];
    for (const auto& r : m.access)
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v) {
          int from = kind == DomainKind::Cumulative ? w : v;
          int to = kind == DomainKind::Cumulative ? v : w;
          for (int e = 0; e < C; ++e)
            s.add_clause({-r[w * W + v], -m.domain[si][from * C + e], m.domain[si][to * C + e]});
        }
  }

  for (const auto& sym : layout->symbols) {
    int cells = 1;
    for (int a : sym.arg_sorts) cells *= sizes[a];
    m.cells_per_world.push_back(cells);
    int total = sym.flexible ? cells * W : cells;
    std::vector<int> table;
    if (sym.predicate()) {
      for (int k = 0; k < total; ++k) {
        table.push_back(c.fresh());
        g->digits.push_back({{-table.back(), table.back()}});
      }
    } else {
      const int C = sizes[sym.result_sort];
      for (int k = 0; k < total; ++k) {
        Digit digit;
        for (int e = 0; e < C; ++e) digit.choices.push_back(c.fresh());
        s.add_clause(digit.choices);
        for (int e = 0; e < C; ++e)
          for (int f = e + 1; f < C; ++f) s.add_clause({-digit.choices[e], -digit.choices[f]});
        table.insert(table.end(), digit.choices.begin(), digit.choices.end());
        g->digits.push_back(std::move(digit));
      }
    }
    m.tables.push_back(std::move(table));
    check_cap();
  }

  for (const auto& u : units.premises) {
    if (u.global)
      for (int w = 0; w < W; ++w) s.add_clause({u.program.ground(c, m, w)});
    else
      s.add_clause({u.program.ground(c, m, 0)});
    check_cap();
  }
  if (!units.conjectures.empty()) {
    std::vector<int> holds;
    for (const auto& u : units.conjectures) {
      if (u.global) {
        std::vector<int> ws;
        for (int w = 0; w < W; ++w) ws.push_back(u.program.ground(c, m, w));
        holds.push_back(c.and_of(ws));
      } else {
        holds.push_back(u.program.ground(c, m, 0));
      }
      check_cap();
    }
    s.add_clause({-c.and_of(holds)});
  }
  check_cap();
  return g;
}

// Fixes the digits one at a time to the least value that keeps the
// constraints satisfiable. The solver holds a model on entry.
std::vector<int> least_model(Grounding& g) {
  Solver& s = g.solver;
  std::vector<int> fixed;
  for (const auto& d : g.digits) {
    for (std::size_t k = 0; k < d.choices.size(); ++k) {
      int lit = d.choices[k];
      if (k + 1 == d.choices.size() || s.lit_value(lit)) {
        fixed.push_back(lit);
        break;
      }
      fixed.push_back(lit);
      if (s.solve(fixed)) break;
      fixed.pop_back();
    }
  }
  if (!s.solve(fixed)) throw Error(ErrorKind::InternalError, {}, "lost the model while minimizing");
  return fixed;
}

KripkeModel extract(const Grounding& g) {
  const SymbolicModel& sm = g.model;
  const Solver& s = g.solver;
  KripkeModel m(sm.layout, sm.worlds, sm.carrier);
  for (std::size_t i = 0; i < sm.access.size(); ++i)
    for (std::size_t k = 0; k < sm.access[i].size(); ++k) m.access[i][k] = s.lit_value(sm.access[i][k]);
  for (std::size_t si = 0; si < sm.domain.size(); ++si)
    for (std::size_t k = 0; k < sm.domain[si].size(); ++k) m.domain[si][k] = s.lit_value(sm.domain[si][k]);
  for (std::size_t sym = 0; sym < sm.tables.size(); ++sym) {
    const SymbolInfo& info = sm.layout->symbols[sym];
    if (info.predicate()) {
      for (std::size_t k = 0; k < sm.tables[sym].size(); ++k) m.tables[sym][k] = s.lit_value(sm.tables[sym][k]);
      continue;
    }
    const std::size_t C = sm.carrier[info.result_sort];
    for (std::size_t k = 0; k < m.tables[sym].size(); ++k)
      for (std::size_t e = 0; e < C; ++e)
        if (s.lit_value(sm.tables[sym][k * C + e])) m.tables[sym][k] = static_cast<int>(e);
  }
  return m;
}

void verify(const KripkeModel& m, const Units& units) {
  auto fail = [](const std::string& name) {
    throw Error(ErrorKind::InternalError, {}, "witness does not satisfy '" + name + "'");
  };
  for (const auto& u : units.premises) {
    for (int w = 0; w < (u.global ? m.worlds : 1); ++w)
      if (!u.program.eval(m, w)) fail(u.name);
  }
  if (units.conjectures.empty()) return;
  bool all = true;
  for (const auto& u : units.conjectures)
    for (int w = 0; w < (u.global ? m.worlds : 1); ++w) all = all && u.program.eval(m, w);
  if (all) fail("the negated conjecture");
}

// Propositional shape of a problem, for the completeness bound.
struct Shape {
  bool propositional = true;
  std::set<std::string> keys;
  std::set<std::string> modal;  // distinct modal subformulas
  int depth = 0;
};

int scan_shape(const FormulaPtr& f, Shape& shape) {
  return std::visit(overloaded{
                        [&](const BoolConstFormula&) { return 0; },
                        [&](const AtomFormula& a) {
                          if (!a.args.empty()) shape.propositional = false;
                          return 0;
                        },
                        [&](const NotFormula& n) { return scan_shape(n.operand, shape); },
                        [&](const BinaryFormula& b) { return std::max(scan_shape(b.lhs, shape), scan_shape(b.rhs, shape)); },
                        [&](const NcApplyFormula& n) {
                          FormulaPtr arg = n.args.size() == 1 ? to_formula(n.args[0]) : nullptr;
                          if (!arg || !n.conn.params.empty()) {
                            shape.propositional = false;
                            return 0;
                          }
                          shape.keys.insert(index_key(n.conn.index));
                          shape.modal.insert(print_formula(f));
                          return 1 + scan_shape(arg, shape);
                        },
                        [&](const auto&) {
                          shape.propositional = false;
                          return 0;
                        },
                    },
                    f->node);
}

bool subset_of(const std::set<FrameCondition>& conds, std::initializer_list<FrameCondition> allowed) {
  for (FrameCondition c : conds)
    if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) return false;
  return true;
}

}  // namespace

std::optional<int> sufficient_worlds(const Problem& problem, const ModalSemantics& sem) {
  if (sem.family != LogicFamily::Modal) return std::nullopt;
  Shape shape;
  bool modal_global_premise = false;
  for (const auto& u : problem) {
    const FormulaPtr* f = u.formula();
    if (!f) continue;
    std::size_t before = shape.modal.size();
    int d = scan_shape(*f, shape);
    shape.depth = std::max(shape.depth, d);
    bool modal = d > 0 || shape.modal.size() != before;
    if (modal && u.role.base != RoleBase::Conjecture && locality_of(u.role) == Locality::Global)
      modal_global_premise = true;
  }
  if (!shape.propositional || shape.keys.size() > 1) return std::nullopt;
  const long n = static_cast<long>(shape.modal.size());
  std::set<FrameCondition> conds =
      frame_conditions(sem.modality(shape.keys.empty() ? std::string() : *shape.keys.begin()));
  using F = FrameCondition;
  auto has = [&](F c) { return conds.count(c) > 0; };
  bool s5 = has(F::Universal) || (has(F::Reflexive) && has(F::Euclidean)) ||
            (has(F::Reflexive) && has(F::Symmetric) && has(F::Transitive));
  if (s5 && subset_of(conds, {F::Reflexive, F::Symmetric, F::Transitive, F::Euclidean, F::Serial, F::ShiftReflexive,
                              F::Dense, F::Confluent, F::Universal}))
    return static_cast<int>(std::min<long>(n + 1, 1 << 20));
  if (!modal_global_premise && subset_of(conds, {F::Reflexive, F::Serial})) {
    long total = 0, power = 1;
    for (int i = 0; i <= shape.depth; ++i) {
      total += power;
      power *= n;
      if (total > (1 << 20)) return std::nullopt;
    }
    return static_cast<int>(total);
  }
  return std::nullopt;
}

Verdict decide(const Problem& problem, const ModalSemantics& sem, const DecideOptions& options) {
  auto layout = std::make_shared<const ModelLayout>(make_layout(problem, sem));
  Units units = compile_units(problem, *layout, sem.family);
  const bool conjecture = !units.conjectures.empty();

  Verdict v;
  v.bounds = options.bounds;
  std::optional<int> enough = sufficient_worlds(problem, sem);
  v.complete = enough && *enough <= options.bounds.max_worlds;

  EnumerateOptions eo;
  eo.bounds = options.bounds;
  for (int W = 1; W <= options.bounds.max_worlds; ++W) {
    for (const auto& sizes : carrier_sizes(*layout, eo)) {
      auto g = ground(layout, units, W, sizes, options);
      if (!g->solver.solve()) continue;
      least_model(*g);
      KripkeModel m = extract(*g);
      verify(m, units);
      v.status = conjecture ? Status::CounterSatisfiable : Status::Satisfiable;
      v.witness = std::move(m);
      v.note = conjecture ? "countermodel found" : "model found";
      return v;
    }
  }
  std::string bound = "worlds<=" + std::to_string(options.bounds.max_worlds) +
                      " domain<=" + std::to_string(options.bounds.max_domain);
  if (!conjecture) {
    v.status = Status::Unsatisfiable;
    v.note = "no model with " + bound + (v.complete ? "; the bound is sufficient" : "; bounded result");
  } else if (v.complete) {
    v.status = Status::Theorem;
    v.note = "no countermodel with " + bound + "; " + std::to_string(*enough) + " worlds suffice";
  } else {
    v.status = Status::Unknown;
    v.note = "no countermodel with " + bound + "; the bound is not known to suffice";
  }
  return v;
}

Verdict decide(const CheckedProblem& checked, const DecideOptions& options) {
  if (checked.semantics) return decide(checked.problem, *checked.semantics, options);
  return decide(checked.problem, ModalSemantics{}, options);
}

}  // namespace tptpnc
