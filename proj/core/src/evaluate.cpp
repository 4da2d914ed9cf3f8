#include "tptpnc/evaluate.hpp"

#include <cstdint>
#include <functional>

#include "tptpnc/detail/overloaded.hpp"
#include "tptpnc/diagnostics.hpp"
#include "tptpnc/embedding.hpp"
#include "tptpnc/printer.hpp"
#include "tptpnc/sat.hpp"

namespace tptpnc {

using detail::overloaded;

namespace {

constexpr int kMaxSlots = 64;
constexpr int kMaxArity = 16;
constexpr int kMaxPredicateBits = 20;

enum class Op : std::uint8_t {
  True,
  False,
  Pred,
  PropVar,
  Eq,
  Not,
  And,
  Or,
  Imp,
  Iff,
  Xor,
  Forall,
  Exists,
  ForallProp,
  ExistsProp,
  Box,
  Dia,
};
enum class TOp : std::uint8_t { Var, App, Lit };

[[noreturn]] void unsupported(const std::string& what) {
  throw EmbedError(ErrorKind::UnsupportedConstruct, {}, what);
}
[[noreturn]] void uninterpreted(const std::string& symbol) {
  throw EmbedError(ErrorKind::UninterpretedSymbol, {}, "symbol '" + symbol + "' has no interpretation");
}

Op binary_op(BinaryOp op) {
  switch (op) {
    case BinaryOp::And: return Op::And;
    case BinaryOp::Or: return Op::Or;
    case BinaryOp::Implies:
    case BinaryOp::Implied: return Op::Imp;
    case BinaryOp::Iff: return Op::Iff;
    case BinaryOp::Xor: return Op::Xor;
  }
  return Op::And;
}

// Head symbol or variable plus all arguments of an atom or application.
struct Flat {
  const AtomFormula* atom = nullptr;
  const VariableFormula* var = nullptr;
  std::vector<TermPtr> args;
};

Flat flatten(const FormulaPtr& f) {
  ApplicationSpine spine = application_spine(f);
  Flat out;
  if ((out.atom = std::get_if<AtomFormula>(&spine.head->node))) out.args = out.atom->args;
  out.var = std::get_if<VariableFormula>(&spine.head->node);
  out.args.insert(out.args.end(), spine.args.begin(), spine.args.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Modal evaluation

struct ModalProgram::Node {
  Op op = Op::True;
  int a = -1, b = -1;
  int x = -1, y = -1;
  int args = 0, nargs = 0;
};

struct ModalProgram::TermNode {
  TOp op = TOp::Var;
  int x = -1;
  int args = 0, nargs = 0;
  int sort = -1;
};

struct ModalProgram::Ctx {
  const KripkeModel* m;
  int env[kMaxSlots];
};

class ModalProgram::Compiler {
 public:
  Compiler(ModalProgram& p, const ModelLayout& layout, LogicFamily family) : p_(p), layout_(layout), family_(family) {}

  struct Var {
    std::string name;
    int slot;
    int sort;  // -1: proposition (world mask)
  };
  std::vector<Var> scope;

  int bind(const Binding& b) {
    int sort = -1;
    TypePtr t = b.type ? b.type : make_base_type(types::kIndividual);
    const BaseType* base = as_base(t);
    if (!base) unsupported("quantification over " + print_type(t) + " is not first-order");
    if (base->name != types::kBool) {
      sort = layout_.sort_id(base->name);
      if (sort < 0) unsupported("no carrier for type " + base->name);
    }
    if (p_.slots_ >= kMaxSlots) unsupported("too many variables");
    scope.push_back({b.name, p_.slots_++, sort});
    return scope.back().slot;
  }

  const Var& lookup(const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == name) return *it;
    throw EmbedError(ErrorKind::TypeError, {}, "unbound variable '" + name + "'");
  }

  int add(Node n) {
    p_.nodes_.push_back(n);
    return static_cast<int>(p_.nodes_.size()) - 1;
  }

  int add_term(TermNode t) {
    p_.terms_.push_back(t);
    return static_cast<int>(p_.terms_.size()) - 1;
  }

  std::pair<int, int> arg_list(const std::vector<TermPtr>& args) {
    std::vector<int> ids;
    for (const auto& a : args) ids.push_back(term(a));
    int begin = static_cast<int>(p_.args_.size());
    p_.args_.insert(p_.args_.end(), ids.begin(), ids.end());
    return {begin, static_cast<int>(ids.size())};
  }

  // Sort of a term, -1 when it denotes a proposition.
  int term_sort(const TermPtr& t) const {
    return std::visit(overloaded{
                          [&](const VariableTerm& v) { return lookup(v.name).sort; },
                          [&](const FunctionTerm& fn) {
                            int s = layout_.symbol_id(fn.symbol);
                            if (s < 0) uninterpreted(fn.symbol);
                            return layout_.symbols[s].result_sort;
                          },
                          [&](const NumberTerm& n) { return layout_.literal(n.lexeme).first; },
                          [&](const DistinctObjectTerm& d) { return layout_.literal(d.lexeme).first; },
                          [&](const FormulaTerm& ft) {
                            Flat flat = flatten(ft.formula);
                            if (flat.atom) {
                              int s = layout_.symbol_id(flat.atom->symbol);
                              if (s < 0) uninterpreted(flat.atom->symbol);
                              return layout_.symbols[s].result_sort;
                            }
                            return -1;
                          },
                          [](const TupleTerm&) -> int { unsupported("tuples"); },
                      },
                      t->node);
  }

  int term(const TermPtr& t) {
    auto literal = [&](const std::string& lexeme) {
      auto [sort, e] = layout_.literal(lexeme);
      if (sort < 0) uninterpreted(lexeme);
      return add_term({TOp::Lit, e, 0, 0, sort});
    };
    auto app = [&](const std::string& symbol, const std::vector<TermPtr>& args) {
      int s = layout_.symbol_id(symbol);
      if (s < 0) uninterpreted(symbol);
      const SymbolInfo& info = layout_.symbols[s];
      if (info.predicate()) unsupported("predicate '" + symbol + "' used as a term");
      if (args.size() != info.arg_sorts.size() || args.size() > kMaxArity)
        throw EmbedError(ErrorKind::TypeError, {}, "wrong number of arguments for '" + symbol + "'");
      auto [begin, n] = arg_list(args);
      return add_term({TOp::App, s, begin, n, info.result_sort});
    };
    return std::visit(overloaded{
                          [&](const VariableTerm& v) {
                            const Var& var = lookup(v.name);
                            if (var.sort < 0) unsupported("proposition variable '" + v.name + "' used as a term");
                            return add_term({TOp::Var, var.slot, 0, 0, var.sort});
                          },
                          [&](const FunctionTerm& fn) { return app(fn.symbol, fn.args); },
                          [&](const NumberTerm& n) { return literal(n.lexeme); },
                          [&](const DistinctObjectTerm& d) { return literal(d.lexeme); },
                          [&](const FormulaTerm& ft) -> int {
                            Flat flat = flatten(ft.formula);
                            if (!flat.atom) unsupported("formula used as a term");
                            return app(flat.atom->symbol, flat.args);
                          },
                          [](const TupleTerm&) -> int { unsupported("tuples"); },
                      },
                      t->node);
  }

  int application(const FormulaPtr& f) {
    Flat flat = flatten(f);
    if (flat.var) {
      if (!flat.args.empty()) unsupported("applied variable '" + flat.var->name + "'");
      const Var& var = lookup(flat.var->name);
      if (var.sort >= 0) throw EmbedError(ErrorKind::TypeError, {}, "'" + var.name + "' is not a proposition");
      return add({Op::PropVar, -1, -1, var.slot});
    }
    if (!flat.atom) unsupported("higher-order application");
    int s = layout_.symbol_id(flat.atom->symbol);
    if (s < 0) uninterpreted(flat.atom->symbol);
    const SymbolInfo& info = layout_.symbols[s];
    if (!info.predicate()) throw EmbedError(ErrorKind::TypeError, {}, "'" + info.name + "' is not a predicate");
    if (flat.args.size() != info.arg_sorts.size() || flat.args.size() > kMaxArity)
      throw EmbedError(ErrorKind::TypeError, {}, "wrong number of arguments for '" + info.name + "'");
    auto [begin, n] = arg_list(flat.args);
    Node node{Op::Pred};
    node.x = s;
    node.args = begin;
    node.nargs = n;
    return add(node);
  }

  int formula(const FormulaPtr& f) {
    return std::visit(
        overloaded{
            [&](const BoolConstFormula& b) { return add({b.value ? Op::True : Op::False}); },
            [&](const AtomFormula&) { return application(f); },
            [&](const ApplyFormula&) { return application(f); },
            [&](const VariableFormula&) { return application(f); },
            [&](const EqualityFormula& e) {
              int n;
              if (term_sort(e.lhs) < 0) {
                FormulaPtr l = to_formula(e.lhs), r = to_formula(e.rhs);
                if (!l || !r) throw EmbedError(ErrorKind::TypeError, {}, "ill-typed equality");
                n = add({Op::Iff, formula(l), formula(r)});
              } else {
                n = add({Op::Eq, term(e.lhs), term(e.rhs)});
              }
              return e.negated ? add({Op::Not, n}) : n;
            },
            [&](const NotFormula& nf) { return add({Op::Not, formula(nf.operand)}); },
            [&](const BinaryFormula& b) {
              int l = formula(b.lhs), r = formula(b.rhs);
              if (b.op == BinaryOp::Implied) std::swap(l, r);
              return add({binary_op(b.op), l, r});
            },
            [&](const QuantifiedFormula& q) {
              std::size_t mark = scope.size();
              std::vector<Var> bound;
              for (const auto& b : q.bindings) {
                bind(b);
                bound.push_back(scope.back());
              }
              int body = formula(q.body);
              scope.resize(mark);
              bool all = q.quantifier == Quantifier::Forall;
              for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
                Node n{it->sort < 0 ? (all ? Op::ForallProp : Op::ExistsProp) : (all ? Op::Forall : Op::Exists), body};
                n.x = it->slot;
                n.y = it->sort;
                body = add(n);
              }
              return body;
            },
            [&](const NcApplyFormula& n) {
              ConnectiveKind kind = classify_connective(n.conn, family_, n.pos);
              if (kind == ConnectiveKind::Unsupported || !n.conn.params.empty() || n.args.size() != 1)
                throw EmbedError(ErrorKind::UnsupportedConstruct, n.pos,
                                 "connective " + print_connective(n.conn) + " has no Kripke semantics here");
              int idx = layout_.index_id(index_key(n.conn.index));
              if (idx < 0) unsupported("index " + index_key(n.conn.index) + " is not in the model layout");
              FormulaPtr arg = to_formula(n.args[0]);
              if (!arg) throw EmbedError(ErrorKind::TypeError, n.pos, "argument of a modal connective must be a formula");
              Node node{kind == ConnectiveKind::Box ? Op::Box : Op::Dia, formula(arg)};
              node.x = idx;
              return add(node);
            },
            [&](const LambdaFormula&) -> int { unsupported("lambda abstraction"); },
            [&](const ConditionalFormula&) -> int { unsupported("$ite"); },
            [&](const LetFormula&) -> int { unsupported("$let"); },
        },
        f->node);
  }

 private:
  ModalProgram& p_;
  const ModelLayout& layout_;
  LogicFamily family_;
};

ModalProgram::ModalProgram(const ModelLayout& layout, LogicFamily family, const FormulaPtr& f,
                           const std::vector<Binding>& free) {
  Compiler c(*this, layout, family);
  for (const auto& b : free) c.bind(b);
  free_ = slots_;
  root_ = c.formula(f);
}

int ModalProgram::term(int t, int w, Ctx& c) const {
  const TermNode& n = terms_[t];
  switch (n.op) {
    case TOp::Var: return c.env[n.x];
    case TOp::Lit: return n.x;
    case TOp::App: {
      int vals[kMaxArity];
      for (int i = 0; i < n.nargs; ++i) vals[i] = term(args_[n.args + i], w, c);
      return c.m->tables[n.x][c.m->cell(n.x, w, vals)];
    }
  }
  return 0;
}

bool ModalProgram::node(int id, int w, Ctx& c) const {
  const Node& n = nodes_[id];
  const KripkeModel& m = *c.m;
  switch (n.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Pred: {
      int vals[kMaxArity];
      for (int i = 0; i < n.nargs; ++i) vals[i] = term(args_[n.args + i], w, c);
      return m.tables[n.x][m.cell(n.x, w, vals)] != 0;
    }
    case Op::PropVar: return (c.env[n.x] >> w) & 1;
    case Op::Eq: return term(n.a, w, c) == term(n.b, w, c);
    case Op::Not: return !node(n.a, w, c);
    case Op::And: return node(n.a, w, c) && node(n.b, w, c);
    case Op::Or: return node(n.a, w, c) || node(n.b, w, c);
    case Op::Imp: return !node(n.a, w, c) || node(n.b, w, c);
    case Op::Iff: return node(n.a, w, c) == node(n.b, w, c);
    case Op::Xor: return node(n.a, w, c) != node(n.b, w, c);
    case Op::Forall:
    case Op::Exists: {
      bool all = n.op == Op::Forall;
      bool constant = m.layout->sorts[n.y].domain == DomainKind::Constant;
      for (int e = 0; e < m.carrier[n.y]; ++e) {
        if (!constant && !m.exists(n.y, w, e)) continue;
        c.env[n.x] = e;
        if (node(n.a, w, c) != all) return !all;
      }
      return all;
    }
    case Op::ForallProp:
    case Op::ExistsProp: {
      bool all = n.op == Op::ForallProp;
      for (int mask = 0; mask < (1 << m.worlds); ++mask) {
        c.env[n.x] = mask;
        if (node(n.a, w, c) != all) return !all;
      }
      return all;
    }
    case Op::Box:
      for (int v = 0; v < m.worlds; ++v)
        if (m.accessible(n.x, w, v) && !node(n.a, v, c)) return false;
      return true;
    case Op::Dia:
      for (int v = 0; v < m.worlds; ++v)
        if (m.accessible(n.x, w, v) && node(n.a, v, c)) return true;
      return false;
  }
  return false;
}

bool ModalProgram::eval(const KripkeModel& m, int world, const int* env) const {
  Ctx c;
  c.m = &m;
  for (int i = 0; i < free_; ++i) c.env[i] = env[i];
  return node(root_, world, c);
}

bool eval_modal(const KripkeModel& m, int world, const FormulaPtr& f, LogicFamily family) {
  return ModalProgram(*m.layout, family, f).eval(m, world);
}

// ---------------------------------------------------------------------------
// Grounding

struct ModalProgram::GroundCtx {
  Circuit* c;
  const SymbolicModel* m;
  int env[kMaxSlots];
};

namespace {

// Calls f(cond, tuple) for every argument tuple whose condition can hold.
void for_each_tuple(Circuit& c, const std::vector<std::vector<int>>& vals, std::vector<int>& tuple,
                    std::vector<int>& conds, std::size_t i, const std::function<void(int, const int*)>& f) {
  if (i == vals.size()) {
    f(c.and_of(conds), tuple.data());
    return;
  }
  for (std::size_t e = 0; e < vals[i].size(); ++e) {
    if (vals[i][e] == c.bottom()) continue;
    tuple[i] = static_cast<int>(e);
    conds.push_back(vals[i][e]);
    for_each_tuple(c, vals, tuple, conds, i + 1, f);
    conds.pop_back();
  }
}

}  // namespace

std::vector<int> ModalProgram::ground_term(int t, int w, GroundCtx& g) const {
  const TermNode& n = terms_[t];
  Circuit& c = *g.c;
  const SymbolicModel& m = *g.m;
  std::vector<int> out(m.carrier[n.sort], c.bottom());
  switch (n.op) {
    case TOp::Var: out[g.env[n.x]] = c.top(); break;
    case TOp::Lit: out[n.x] = c.top(); break;
    case TOp::App: {
      std::vector<std::vector<int>> vals;
      for (int i = 0; i < n.nargs; ++i) vals.push_back(ground_term(args_[n.args + i], w, g));
      std::vector<std::vector<int>> options(out.size());
      std::vector<int> tuple(vals.size()), conds;
      const std::size_t C = out.size();
      for_each_tuple(c, vals, tuple, conds, 0, [&](int cond, const int* args) {
        std::size_t cell = m.cell(n.x, w, args);
        for (std::size_t e = 0; e < C; ++e) options[e].push_back(c.and2(cond, m.tables[n.x][cell * C + e]));
      });
      for (std::size_t e = 0; e < C; ++e) out[e] = c.or_of(options[e]);
      break;
    }
  }
  return out;
}

int ModalProgram::ground_node(int id, int w, GroundCtx& g) const {
  const Node& n = nodes_[id];
  Circuit& c = *g.c;
  const SymbolicModel& m = *g.m;
  switch (n.op) {
    case Op::True: return c.top();
    case Op::False: return c.bottom();
    case Op::Pred: {
      std::vector<std::vector<int>> vals;
      for (int i = 0; i < n.nargs; ++i) vals.push_back(ground_term(args_[n.args + i], w, g));
      std::vector<int> options, tuple(vals.size()), conds;
      for_each_tuple(c, vals, tuple, conds, 0, [&](int cond, const int* args) {
        options.push_back(c.and2(cond, m.tables[n.x][m.cell(n.x, w, args)]));
      });
      return c.or_of(options);
    }
    case Op::PropVar: return c.constant((g.env[n.x] >> w) & 1);
    case Op::Eq: {
      std::vector<int> l = ground_term(n.a, w, g), r = ground_term(n.b, w, g);
      std::vector<int> options;
      for (std::size_t e = 0; e < l.size(); ++e) options.push_back(c.and2(l[e], r[e]));
      return c.or_of(options);
    }
    case Op::Not: return -ground_node(n.a, w, g);
    case Op::And: return c.and2(ground_node(n.a, w, g), ground_node(n.b, w, g));
    case Op::Or: return c.or2(ground_node(n.a, w, g), ground_node(n.b, w, g));
    case Op::Imp: return c.implies(ground_node(n.a, w, g), ground_node(n.b, w, g));
    case Op::Iff: return c.iff(ground_node(n.a, w, g), ground_node(n.b, w, g));
    case Op::Xor: return c.xor2(ground_node(n.a, w, g), ground_node(n.b, w, g));
    case Op::Forall:
    case Op::Exists: {
      bool all = n.op == Op::Forall;
      bool constant = m.layout->sorts[n.y].domain == DomainKind::Constant;
      std::vector<int> parts;
      for (int e = 0; e < m.carrier[n.y]; ++e) {
        g.env[n.x] = e;
        int body = ground_node(n.a, w, g);
        int guard = constant ? c.top() : m.domain[n.y][w * m.carrier[n.y] + e];
        parts.push_back(all ? c.implies(guard, body) : c.and2(guard, body));
      }
      return all ? c.and_of(parts) : c.or_of(parts);
    }
    case Op::ForallProp:
    case Op::ExistsProp: {
      bool all = n.op == Op::ForallProp;
      std::vector<int> parts;
      for (int mask = 0; mask < (1 << m.worlds); ++mask) {
        g.env[n.x] = mask;
        parts.push_back(ground_node(n.a, w, g));
      }
      return all ? c.and_of(parts) : c.or_of(parts);
    }
    case Op::Box:
    case Op::Dia: {
      std::vector<int> parts;
      for (int v = 0; v < m.worlds; ++v) {
        int r = m.access[n.x][w * m.worlds + v];
        if (r == c.bottom()) continue;
        int body = ground_node(n.a, v, g);
        parts.push_back(n.op == Op::Box ? c.implies(r, body) : c.and2(r, body));
      }
      return n.op == Op::Box ? c.and_of(parts) : c.or_of(parts);
    }
  }
  return c.bottom();
}

int ModalProgram::ground(Circuit& c, const SymbolicModel& m, int world, const int* env) const {
  GroundCtx g;
  g.c = &c;
  g.m = &m;
  for (int i = 0; i < free_; ++i) g.env[i] = env[i];
  return ground_node(root_, world, g);
}

// ---------------------------------------------------------------------------
// Classical structures

int ClassicalStructure::sort_id(const std::string& name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i].name == name) return static_cast<int>(i);
  return -1;
}

int ClassicalStructure::symbol_id(const std::string& name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == name) return static_cast<int>(i);
  return -1;
}

ClassicalStructure translate_model(const KripkeModel& m) {
  const ModelLayout& layout = *m.layout;
  const int W = m.worlds;
  ClassicalStructure s;
  s.sorts.push_back({kWorldType, W});
  for (std::size_t i = 0; i < layout.sorts.size(); ++i) s.sorts.push_back({layout.sorts[i].name, m.carrier[i]});

  s.symbols.push_back({kCurrentWorld, {}, 0, {m.current}});
  for (std::size_t i = 0; i < layout.indices.size(); ++i) {
    ClassicalStructure::Symbol rel{relation_name(layout.indices[i].key), {0, 0}, -1, {}};
    for (int w = 0; w < W; ++w)
      for (int v = 0; v < W; ++v) rel.table.push_back(m.accessible(static_cast<int>(i), w, v));
    s.symbols.push_back(std::move(rel));
  }
  for (std::size_t i = 0; i < layout.sorts.size(); ++i) {
    if (layout.sorts[i].domain == DomainKind::Constant) continue;
    ClassicalStructure::Symbol ex{existence_name(layout.sorts[i].name), {0, static_cast<int>(i) + 1}, -1, {}};
    for (int w = 0; w < W; ++w)
      for (int e = 0; e < m.carrier[i]; ++e) ex.table.push_back(m.exists(static_cast<int>(i), w, e));
    s.symbols.push_back(std::move(ex));
  }

  for (std::size_t k = 0; k < layout.symbols.size(); ++k) {
    const SymbolInfo& info = layout.symbols[k];
    std::vector<int> arg_sorts;
    for (int a : info.arg_sorts) arg_sorts.push_back(a + 1);
    int result = info.predicate() ? -1 : info.result_sort + 1;
    const int cells = m.cells_per_world[k];

    // Decode a table offset back into its argument tuple.
    std::vector<int> tuple(info.arg_sorts.size());
    auto decode = [&](int off) {
      for (std::size_t i = info.arg_sorts.size(); i-- > 0;) {
        tuple[i] = off % m.carrier[info.arg_sorts[i]];
        off /= m.carrier[info.arg_sorts[i]];
      }
    };

    ClassicalStructure::Symbol sym;
    sym.result_sort = result;
    if (info.predicate()) {
      // p_at: args..., world
      sym.name = lifted_symbol_name(info.name);
      sym.arg_sorts = arg_sorts;
      sym.arg_sorts.push_back(0);
      for (int off = 0; off < cells; ++off) {
        decode(off);
        for (int w = 0; w < W; ++w) sym.table.push_back(m.tables[k][m.cell(static_cast<int>(k), w, tuple.data())]);
      }
    } else if (info.flexible) {
      // f_at: world, args...
      sym.name = lifted_symbol_name(info.name);
      sym.arg_sorts.push_back(0);
      sym.arg_sorts.insert(sym.arg_sorts.end(), arg_sorts.begin(), arg_sorts.end());
      for (int w = 0; w < W; ++w)
        for (int off = 0; off < cells; ++off) {
          decode(off);
          sym.table.push_back(m.tables[k][m.cell(static_cast<int>(k), w, tuple.data())]);
        }
    } else {
      sym.name = info.name;
      sym.arg_sorts = arg_sorts;
      for (int off = 0; off < cells; ++off) {
        decode(off);
        sym.table.push_back(m.tables[k][m.cell(static_cast<int>(k), 0, tuple.data())]);
      }
    }
    s.symbols.push_back(std::move(sym));
  }

  for (std::size_t i = 0; i < layout.sorts.size(); ++i)
    for (std::size_t l = 0; l < layout.sorts[i].literals.size(); ++l)
      s.literals[layout.sorts[i].literals[l]] = {static_cast<int>(i) + 1, static_cast<int>(l)};
  return s;
}

// ---------------------------------------------------------------------------
// Classical evaluation

struct ClassicalProgram::Node {
  Op op = Op::True;
  int a = -1, b = -1;
  int x = -1, y = -1;
  int args = 0, nargs = 0;
};

struct ClassicalProgram::TermNode {
  TOp op = TOp::Var;
  int x = -1;
  int args = 0, nargs = 0;
};

struct ClassicalProgram::Ctx {
  const ClassicalStructure* s;
  int env[kMaxSlots];
};

class ClassicalProgram::Compiler {
 public:
  Compiler(ClassicalProgram& p, const ClassicalStructure& schema)
      : p_(p), schema_(schema), pred_sorts_(p.pred_sorts_) {}

  struct Var {
    std::string name;
    int slot;
    int sort;  // -1: predicate variable
    int pred = -1;
  };
  std::vector<Var> scope;

  void bind_free(const std::string& name) { scope.push_back({name, p_.slots_++, 0}); }

  Var bind(const Binding& b) {
    if (p_.slots_ >= kMaxSlots) unsupported("too many variables");
    TypePtr t = b.type ? b.type : make_base_type(types::kIndividual);
    FunctionShape shape = uncurry(t);
    Var v{b.name, p_.slots_++, -1};
    if (shape.args.empty() && !is_base(shape.result, types::kBool)) {
      v.sort = sort_of(shape.result);
    } else {
      if (!is_base(shape.result, types::kBool)) unsupported("quantification over functions of type " + print_type(t));
      std::vector<int> sorts;
      for (const auto& a : shape.args) sorts.push_back(sort_of(a));
      pred_sorts_.push_back(sorts);
      v.pred = static_cast<int>(pred_sorts_.size()) - 1;
    }
    scope.push_back(v);
    return v;
  }

  int sort_of(const TypePtr& t) const {
    const BaseType* base = as_base(t);
    if (!base || base->name == types::kBool) unsupported("type " + print_type(t) + " is not a sort");
    int s = schema_.sort_id(base->name);
    if (s < 0) unsupported("no carrier for type " + base->name);
    return s;
  }

  const Var& lookup(const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == name) return *it;
    throw EmbedError(ErrorKind::TypeError, {}, "unbound variable '" + name + "'");
  }

  int add(Node n) {
    p_.nodes_.push_back(n);
    return static_cast<int>(p_.nodes_.size()) - 1;
  }
  int add_term(TermNode t) {
    p_.terms_.push_back(t);
    return static_cast<int>(p_.terms_.size()) - 1;
  }

  std::pair<int, int> arg_list(const std::vector<TermPtr>& args) {
    std::vector<int> ids;
    for (const auto& a : args) ids.push_back(term(a));
    int begin = static_cast<int>(p_.args_.size());
    p_.args_.insert(p_.args_.end(), ids.begin(), ids.end());
    return {begin, static_cast<int>(ids.size())};
  }

  int symbol(const std::string& name, std::size_t nargs, bool predicate) const {
    int s = schema_.symbol_id(name);
    if (s < 0) uninterpreted(name);
    const auto& sym = schema_.symbols[s];
    if ((sym.result_sort < 0) != predicate)
      throw EmbedError(ErrorKind::TypeError, {}, "'" + name + (predicate ? "' is not a predicate" : "' is a predicate"));
    if (nargs != sym.arg_sorts.size() || nargs > kMaxArity)
      throw EmbedError(ErrorKind::TypeError, {}, "'" + name + "' expects " + std::to_string(sym.arg_sorts.size()) +
                                                     " arguments, got " + std::to_string(nargs));
    return s;
  }

  int term(const TermPtr& t) {
    auto literal = [&](const std::string& lexeme) {
      auto it = schema_.literals.find(lexeme);
      if (it == schema_.literals.end()) uninterpreted(lexeme);
      return add_term({TOp::Lit, it->second.second, 0, 0});
    };
    auto app = [&](const std::string& name, const std::vector<TermPtr>& args) {
      int s = symbol(name, args.size(), false);
      auto [begin, n] = arg_list(args);
      return add_term({TOp::App, s, begin, n});
    };
    return std::visit(overloaded{
                          [&](const VariableTerm& v) {
                            const Var& var = lookup(v.name);
                            if (var.sort < 0) unsupported("predicate variable '" + v.name + "' used as a term");
                            return add_term({TOp::Var, var.slot, 0, 0});
                          },
                          [&](const FunctionTerm& fn) { return app(fn.symbol, fn.args); },
                          [&](const NumberTerm& n) { return literal(n.lexeme); },
                          [&](const DistinctObjectTerm& d) { return literal(d.lexeme); },
                          [&](const FormulaTerm& ft) -> int {
                            if (std::holds_alternative<LambdaFormula>(ft.formula->node))
                              throw EmbedError(ErrorKind::InternalError, {}, "residual lambda in classical formula");
                            Flat flat = flatten(ft.formula);
                            if (!flat.atom) unsupported("formula used as a term");
                            return app(flat.atom->symbol, flat.args);
                          },
                          [](const TupleTerm&) -> int { unsupported("tuples"); },
                      },
                      t->node);
  }

  int application(const FormulaPtr& f) {
    Flat flat = flatten(f);
    if (flat.var) {
      const Var& var = lookup(flat.var->name);
      if (var.pred < 0) throw EmbedError(ErrorKind::TypeError, {}, "'" + var.name + "' is not a predicate variable");
      if (flat.args.size() != pred_sorts_[var.pred].size())
        throw EmbedError(ErrorKind::TypeError, {}, "wrong number of arguments for '" + var.name + "'");
      auto [begin, n] = arg_list(flat.args);
      Node node{Op::PropVar};
      node.x = var.slot;
      node.y = var.pred;
      node.args = begin;
      node.nargs = n;
      return add(node);
    }
    if (!flat.atom) {
      if (std::holds_alternative<LambdaFormula>(application_spine(f).head->node))
        throw EmbedError(ErrorKind::InternalError, {}, "residual lambda in classical formula");
      unsupported("application of a complex head");
    }
    int s = symbol(flat.atom->symbol, flat.args.size(), true);
    auto [begin, n] = arg_list(flat.args);
    Node node{Op::Pred};
    node.x = s;
    node.args = begin;
    node.nargs = n;
    return add(node);
  }

  int formula(const FormulaPtr& f) {
    return std::visit(
        overloaded{
            [&](const BoolConstFormula& b) { return add({b.value ? Op::True : Op::False}); },
            [&](const AtomFormula&) { return application(f); },
            [&](const ApplyFormula&) { return application(f); },
            [&](const VariableFormula&) { return application(f); },
            [&](const EqualityFormula& e) {
              int n = add({Op::Eq, term(e.lhs), term(e.rhs)});
              return e.negated ? add({Op::Not, n}) : n;
            },
            [&](const NotFormula& nf) { return add({Op::Not, formula(nf.operand)}); },
            [&](const BinaryFormula& b) {
              int l = formula(b.lhs), r = formula(b.rhs);
              if (b.op == BinaryOp::Implied) std::swap(l, r);
              return add({binary_op(b.op), l, r});
            },
            [&](const QuantifiedFormula& q) {
              std::size_t mark = scope.size();
              std::vector<Var> bound;
              for (const auto& b : q.bindings) bound.push_back(bind(b));
              int body = formula(q.body);
              scope.resize(mark);
              bool all = q.quantifier == Quantifier::Forall;
              for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
                bool pred = it->pred >= 0;
                Node n{pred ? (all ? Op::ForallProp : Op::ExistsProp) : (all ? Op::Forall : Op::Exists), body};
                n.x = it->slot;
                n.y = pred ? it->pred : it->sort;
                body = add(n);
              }
              return body;
            },
            [&](const LambdaFormula&) -> int {
              throw EmbedError(ErrorKind::InternalError, {}, "residual lambda in classical formula");
            },
            [&](const NcApplyFormula&) -> int { unsupported("non-classical connective in a classical formula"); },
            [&](const ConditionalFormula&) -> int { unsupported("$ite"); },
            [&](const LetFormula&) -> int { unsupported("$let"); },
        },
        f->node);
  }

 private:
  ClassicalProgram& p_;
  const ClassicalStructure& schema_;
  std::vector<std::vector<int>>& pred_sorts_;
};

ClassicalProgram::ClassicalProgram(const ClassicalStructure& schema, const FormulaPtr& f,
                                   const std::vector<std::string>& free) {
  Compiler c(*this, schema);
  for (const auto& name : free) c.bind_free(name);
  free_ = slots_;
  root_ = c.formula(f);
}

int ClassicalProgram::term(int t, Ctx& c) const {
  const TermNode& n = terms_[t];
  switch (n.op) {
    case TOp::Var: return c.env[n.x];
    case TOp::Lit: return n.x;
    case TOp::App: {
      int vals[kMaxArity];
      for (int i = 0; i < n.nargs; ++i) vals[i] = term(args_[n.args + i], c);
      const auto& sym = c.s->symbols[n.x];
      return sym.table[c.s->offset(sym, vals)];
    }
  }
  return 0;
}

bool ClassicalProgram::node(int id, Ctx& c) const {
  const Node& n = nodes_[id];
  const ClassicalStructure& s = *c.s;
  switch (n.op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Pred: {
      int vals[kMaxArity];
      for (int i = 0; i < n.nargs; ++i) vals[i] = term(args_[n.args + i], c);
      const auto& sym = s.symbols[n.x];
      return sym.table[s.offset(sym, vals)] != 0;
    }
    case Op::PropVar: {
      const auto& sorts = pred_sorts_[n.y];
      std::size_t off = 0;
      for (int i = 0; i < n.nargs; ++i) off = off * s.sorts[sorts[i]].size + term(args_[n.args + i], c);
      return (c.env[n.x] >> off) & 1;
    }
    case Op::Eq: return term(n.a, c) == term(n.b, c);
    case Op::Not: return !node(n.a, c);
    case Op::And: return node(n.a, c) && node(n.b, c);
    case Op::Or: return node(n.a, c) || node(n.b, c);
    case Op::Imp: return !node(n.a, c) || node(n.b, c);
    case Op::Iff: return node(n.a, c) == node(n.b, c);
    case Op::Xor: return node(n.a, c) != node(n.b, c);
    case Op::Forall:
    case Op::Exists: {
      bool all = n.op == Op::Forall;
      for (int e = 0; e < s.sorts[n.y].size; ++e) {
        c.env[n.x] = e;
        if (node(n.a, c) != all) return !all;
      }
      return all;
    }
    case Op::ForallProp:
    case Op::ExistsProp: {
      bool all = n.op == Op::ForallProp;
      int bits = 1;
      for (int sort : pred_sorts_[n.y]) bits *= s.sorts[sort].size;
      if (bits > kMaxPredicateBits) throw ResourceError("predicate quantifier ranges over 2^" + std::to_string(bits) + " values");
      for (int mask = 0; mask < (1 << bits); ++mask) {
        c.env[n.x] = mask;
        if (node(n.a, c) != all) return !all;
      }
      return all;
    }
    case Op::Box:
    case Op::Dia: break;
  }
  return false;
}

bool ClassicalProgram::eval(const ClassicalStructure& s, const int* env) const {
  Ctx c;
  c.s = &s;
  for (int i = 0; i < free_; ++i) c.env[i] = env[i];
  return node(root_, c);
}

bool eval_classical(const ClassicalStructure& s, const FormulaPtr& f, const std::map<std::string, int>& env) {
  std::vector<std::string> names;
  std::vector<int> values;
  for (const auto& [name, value] : env) {
    names.push_back(name);
    values.push_back(value);
  }
  return ClassicalProgram(s, f, names).eval(s, values.data());
}

ModalProgram::ModalProgram(const ModalProgram&) = default;
ModalProgram::ModalProgram(ModalProgram&&) noexcept = default;
ModalProgram& ModalProgram::operator=(const ModalProgram&) = default;
ModalProgram& ModalProgram::operator=(ModalProgram&&) noexcept = default;
ModalProgram::~ModalProgram() = default;

ClassicalProgram::ClassicalProgram(const ClassicalProgram&) = default;
ClassicalProgram::ClassicalProgram(ClassicalProgram&&) noexcept = default;
ClassicalProgram& ClassicalProgram::operator=(const ClassicalProgram&) = default;
ClassicalProgram& ClassicalProgram::operator=(ClassicalProgram&&) noexcept = default;
ClassicalProgram::~ClassicalProgram() = default;

}  // namespace tptpnc
