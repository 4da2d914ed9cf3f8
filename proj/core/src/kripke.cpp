#include "tptpnc/kripke.hpp"

#include <sstream>

#include "tptpnc/detail/overloaded.hpp"
#include "tptpnc/diagnostics.hpp"
#include "tptpnc/printer.hpp"

namespace tptpnc {

using detail::overloaded;

namespace {

struct Scan {
  std::set<std::string> binder_sorts;
  std::set<std::string> indices;
  std::vector<std::pair<std::string, std::string>> literals;

  void literal(const std::string& lexeme, const std::string& sort) {
    for (const auto& l : literals)
      if (l.first == lexeme) return;
    literals.emplace_back(lexeme, sort);
  }

  void binders(const std::vector<Binding>& bs) {
    for (const auto& b : bs) {
      if (!b.type) binder_sorts.insert(types::kIndividual);
      else if (const BaseType* base = as_base(b.type)) binder_sorts.insert(base->name);
    }
  }

  void term(const TermPtr& t) {
    std::visit(overloaded{
                   [&](const FunctionTerm& fn) {
                     for (const auto& a : fn.args) term(a);
                   },
                   [&](const NumberTerm& n) { literal(n.lexeme, as_base(number_type(n.kind))->name); },
                   [&](const DistinctObjectTerm& d) { literal(d.lexeme, types::kIndividual); },
                   [&](const FormulaTerm& ft) { formula(ft.formula); },
                   [&](const TupleTerm& tu) {
                     for (const auto& e : tu.elements) term(e);
                   },
                   [](const VariableTerm&) {},
               },
               t->node);
  }

  void formula(const FormulaPtr& f) {
    std::visit(overloaded{
                   [&](const AtomFormula& a) {
                     for (const auto& t : a.args) term(t);
                   },
                   [&](const EqualityFormula& e) {
                     term(e.lhs);
                     term(e.rhs);
                   },
                   [&](const NotFormula& n) { formula(n.operand); },
                   [&](const BinaryFormula& b) {
                     formula(b.lhs);
                     formula(b.rhs);
                   },
                   [&](const QuantifiedFormula& q) {
                     binders(q.bindings);
                     formula(q.body);
                   },
                   [&](const LambdaFormula& l) {
                     binders(l.bindings);
                     formula(l.body);
                   },
                   [&](const ApplyFormula& a) {
                     formula(a.head);
                     term(a.arg);
                   },
                   [&](const NcApplyFormula& n) {
                     indices.insert(index_key(n.conn.index));
                     for (const auto& t : n.args) term(t);
                   },
                   [&](const ConditionalFormula& c) {
                     formula(c.condition);
                     term(c.then_branch);
                     term(c.else_branch);
                   },
                   [](const auto&) {},
               },
               f->node);
  }
};

[[noreturn]] void higher_order(const std::string& symbol, const TypePtr& t) {
  throw EmbedError(ErrorKind::UnsupportedConstruct, {},
                   "the oracle handles first-order symbols only; '" + symbol + "' has type " + print_type(t));
}

}  // namespace

int ModelLayout::sort_id(const std::string& name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i].name == name) return static_cast<int>(i);
  return -1;
}

int ModelLayout::symbol_id(const std::string& name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == name) return static_cast<int>(i);
  return -1;
}

int ModelLayout::index_id(const std::string& key) const {
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i].key == key) return static_cast<int>(i);
  return -1;
}

std::pair<int, int> ModelLayout::literal(const std::string& lexeme) const {
  for (std::size_t s = 0; s < sorts.size(); ++s)
    for (std::size_t i = 0; i < sorts[s].literals.size(); ++i)
      if (sorts[s].literals[i] == lexeme) return {static_cast<int>(s), static_cast<int>(i)};
  return {-1, -1};
}

ModelLayout make_layout(const Signature& sig, const ModalSemantics& sem, const std::set<std::string>& extra_sorts,
                        const std::set<std::string>& index_keys,
                        const std::vector<std::pair<std::string, std::string>>& literals) {
  std::set<std::string> sort_names = extra_sorts;
  for (const auto& s : sig.sorts) sort_names.insert(s);
  for (const auto& l : literals) sort_names.insert(l.second);
  std::vector<FunctionShape> shapes;
  for (const auto& name : sig.order) {
    const TypePtr& t = sig.types.at(name);
    FunctionShape shape = uncurry(t);
    for (const auto& a : shape.args) {
      const BaseType* b = as_base(a);
      if (!b || b->name == types::kBool) higher_order(name, t);
      sort_names.insert(b->name);
    }
    const BaseType* r = as_base(shape.result);
    if (!r || r->name == types::kType) higher_order(name, t);
    if (r->name != types::kBool) sort_names.insert(r->name);
    shapes.push_back(std::move(shape));
  }
  sort_names.erase(types::kBool);
  sort_names.erase(types::kType);

  ModelLayout layout;
  for (const auto& s : sort_names) layout.sorts.push_back(SortInfo{s, sem.domain(s), {}});
  for (std::size_t i = 0; i < sig.order.size(); ++i) {
    SymbolInfo info;
    info.name = sig.order[i];
    for (const auto& a : shapes[i].args) info.arg_sorts.push_back(layout.sort_id(as_base(a)->name));
    const std::string& result = as_base(shapes[i].result)->name;
    info.result_sort = result == types::kBool ? -1 : layout.sort_id(result);
    info.flexible = info.predicate() || sem.rigidity(info.name) == Rigidity::Flexible;
    layout.symbols.push_back(std::move(info));
  }
  std::set<std::string> keys = index_keys;
  keys.insert("");
  for (const auto& [key, _] : sem.modality_overrides) keys.insert(key);
  for (const auto& key : keys) layout.indices.push_back(IndexInfo{key, frame_conditions(sem.modality(key))});
  for (const auto& [lexeme, sort] : literals) {
    auto& lits = layout.sorts[layout.sort_id(sort)].literals;
    if (std::find(lits.begin(), lits.end(), lexeme) == lits.end()) lits.push_back(lexeme);
  }
  return layout;
}

ModelLayout make_layout(const Problem& problem, const ModalSemantics& sem) {
  Signature sig = build_signature(problem);
  Scan scan;
  for (const auto& u : problem)
    if (const FormulaPtr* f = u.formula()) scan.formula(*f);
  std::set<std::string> extra;
  for (const auto& s : scan.binder_sorts)
    if (s != types::kBool) extra.insert(s);
  return make_layout(sig, sem, extra, scan.indices, scan.literals);
}

KripkeModel::KripkeModel(std::shared_ptr<const ModelLayout> l, int w, std::vector<int> c)
    : layout(std::move(l)), worlds(w), carrier(std::move(c)) {
  access.assign(layout->indices.size(), std::vector<std::uint8_t>(static_cast<std::size_t>(worlds * worlds), 0));
  for (std::size_t s = 0; s < layout->sorts.size(); ++s)
    domain.emplace_back(static_cast<std::size_t>(worlds * carrier[s]), 1);
  for (const auto& sym : layout->symbols) {
    int cells = 1;
    for (int a : sym.arg_sorts) cells *= carrier[a];
    cells_per_world.push_back(cells);
    tables.emplace_back(static_cast<std::size_t>(sym.flexible ? cells * worlds : cells), 0);
  }
}

namespace {

std::string element(int e) { return "e" + std::to_string(e); }
std::string world(int w) { return "w" + std::to_string(w); }

std::string tuple(const std::vector<int>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + element(args[i]);
  return out + ")";
}

// All argument tuples of a symbol in table order.
std::vector<std::vector<int>> tuples(const KripkeModel& m, const SymbolInfo& sym) {
  std::vector<std::vector<int>> out{{}};
  for (int s : sym.arg_sorts) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int e = 0; e < m.carrier[s]; ++e) {
        next.push_back(t);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::string serialize_model(const KripkeModel& m) {
  const ModelLayout& layout = *m.layout;
  std::ostringstream out;
  out << "worlds " << m.worlds << " current " << world(m.current) << "\n";
  for (std::size_t s = 0; s < layout.sorts.size(); ++s) {
    out << "sort " << layout.sorts[s].name << " " << m.carrier[s];
    for (std::size_t i = 0; i < layout.sorts[s].literals.size(); ++i)
      out << " " << layout.sorts[s].literals[i] << "=" << element(static_cast<int>(i));
    out << "\n";
  }
  for (std::size_t i = 0; i < layout.indices.size(); ++i) {
    out << "access " << (layout.indices[i].key.empty() ? "#default" : "#" + layout.indices[i].key) << ":";
    for (int w = 0; w < m.worlds; ++w)
      for (int v = 0; v < m.worlds; ++v)
        if (m.accessible(static_cast<int>(i), w, v)) out << " " << world(w) << "->" << world(v);
    out << "\n";
  }
  for (std::size_t s = 0; s < layout.sorts.size(); ++s) {
    if (layout.sorts[s].domain == DomainKind::Constant) continue;
    out << "domain " << layout.sorts[s].name << ":";
    for (int w = 0; w < m.worlds; ++w) {
      out << " " << world(w) << "={";
      bool first = true;
      for (int e = 0; e < m.carrier[s]; ++e)
        if (m.exists(static_cast<int>(s), w, e)) {
          out << (first ? "" : ",") << element(e);
          first = false;
        }
      out << "}";
    }
    out << "\n";
  }
  for (std::size_t s = 0; s < layout.symbols.size(); ++s) {
    const SymbolInfo& sym = layout.symbols[s];
    auto all = tuples(m, sym);
    int world_count = sym.flexible ? m.worlds : 1;
    out << (sym.predicate() ? "predicate " : "function ") << sym.name << ":";
    for (int w = 0; w < world_count; ++w) {
      out << " ";
      if (sym.flexible) out << world(w) << "=";
      if (sym.predicate()) {
        out << "{";
        bool first = true;
        for (const auto& t : all)
          if (m.tables[s][m.cell(static_cast<int>(s), w, t.data())]) {
            out << (first ? "" : ",") << tuple(t);
            first = false;
          }
        out << "}";
      } else {
        out << "[";
        for (std::size_t k = 0; k < all.size(); ++k)
          out << (k ? "," : "") << tuple(all[k]) << "->" << element(m.tables[s][m.cell(static_cast<int>(s), w, all[k].data())]);
        out << "]";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tptpnc
