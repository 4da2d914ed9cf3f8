#include "tptpnc/enumerate.hpp"

#include "tptpnc/diagnostics.hpp"
#include "tptpnc/embedding.hpp"
#include "tptpnc/evaluate.hpp"

namespace tptpnc {

namespace {

constexpr int kMaxRelationCells = 24;

using Matrix = std::vector<std::uint8_t>;

bool holds(const Matrix& r, int W, FrameCondition c) {
  auto R = [&](int w, int v) { return r[w * W + v] != 0; };
  switch (c) {
    case FrameCondition::Reflexive:
      for (int w = 0; w < W; ++w)
        if (!R(w, w)) return false;
      return true;
    case FrameCondition::Symmetric:
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v)
          if (R(w, v) && !R(v, w)) return false;
      return true;
    case FrameCondition::Serial:
      for (int w = 0; w < W; ++w) {
        bool any = false;
        for (int v = 0; v < W; ++v) any = any || R(w, v);
        if (!any) return false;
      }
      return true;
    case FrameCondition::Transitive:
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v)
          for (int u = 0; u < W; ++u)
            if (R(w, v) && R(v, u) && !R(w, u)) return false;
      return true;
    case FrameCondition::Euclidean:
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v)
          for (int u = 0; u < W; ++u)
            if (R(w, v) && R(w, u) && !R(v, u)) return false;
      return true;
    case FrameCondition::Functional:
      for (int w = 0; w < W; ++w) {
        int n = 0;
        for (int v = 0; v < W; ++v) n += R(w, v);
        if (n > 1) return false;
      }
      return true;
    case FrameCondition::ShiftReflexive:
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v)
          if (R(w, v) && !R(v, v)) return false;
      return true;
    case FrameCondition::Dense:
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v) {
          if (!R(w, v)) continue;
          bool mid = false;
          for (int u = 0; u < W; ++u) mid = mid || (R(w, u) && R(u, v));
          if (!mid) return false;
        }
      return true;
    case FrameCondition::Confluent:
      for (int w = 0; w < W; ++w)
        for (int v = 0; v < W; ++v)
          for (int u = 0; u < W; ++u) {
            if (!R(w, v) || !R(w, u)) continue;
            bool join = false;
            for (int x = 0; x < W; ++x) join = join || (R(v, x) && R(u, x));
            if (!join) return false;
          }
      return true;
    case FrameCondition::Universal:
      for (int i = 0; i < W * W; ++i)
        if (!r[i]) return false;
      return true;
  }
  return false;
}

// All relations on W worlds meeting the conditions, cell (0,0) most significant.
std::vector<Matrix> relations(int W, const std::set<FrameCondition>& conditions, FrameMode mode) {
  const int cells = W * W;
  if (cells > kMaxRelationCells)
    throw ResourceError(std::to_string(W) + " worlds exceed the relation enumeration limit");
  ClassicalStructure frame;
  frame.sorts.push_back({kWorldType, W});
  frame.symbols.push_back({"r", {0, 0}, -1, std::vector<int>(cells, 0)});
  std::vector<ClassicalProgram> axioms;
  if (mode == FrameMode::Axioms)
    for (FrameCondition c : conditions) axioms.emplace_back(frame, frame_condition_formula("r", c, Language::Tff));

  std::vector<Matrix> out;
  for (std::uint32_t code = 0; code < (1u << cells); ++code) {
    Matrix r(cells);
    for (int i = 0; i < cells; ++i) r[i] = (code >> (cells - 1 - i)) & 1;
    bool ok = true;
    if (mode == FrameMode::Conditions) {
      for (FrameCondition c : conditions) ok = ok && holds(r, W, c);
    } else {
      for (int i = 0; i < cells; ++i) frame.symbols[0].table[i] = r[i];
      for (const auto& a : axioms) ok = ok && a.eval(frame);
    }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  if (a == 0 || b == 0) return 0;
  if (a > limit / b) return limit;
  return std::min(a * b, limit);
}

bool domains_ok(const KripkeModel& m) {
  const ModelLayout& layout = *m.layout;
  for (std::size_t s = 0; s < layout.sorts.size(); ++s) {
    DomainKind kind = layout.sorts[s].domain;
    if (kind != DomainKind::Cumulative && kind != DomainKind::Decreasing) continue;
    for (std::size_t i = 0; i < layout.indices.size(); ++i)
      for (int w = 0; w < m.worlds; ++w)
        for (int v = 0; v < m.worlds; ++v) {
          if (!m.accessible(static_cast<int>(i), w, v)) continue;
          int from = kind == DomainKind::Cumulative ? w : v;
          int to = kind == DomainKind::Cumulative ? v : w;
          for (int e = 0; e < m.carrier[s]; ++e)
            if (m.exists(static_cast<int>(s), from, e) && !m.exists(static_cast<int>(s), to, e)) return false;
        }
  }
  return true;
}

}  // namespace

bool satisfies(const KripkeModel& m, int index, FrameCondition c) { return holds(m.access[index], m.worlds, c); }

std::vector<std::vector<int>> carrier_sizes(const ModelLayout& layout, const EnumerateOptions& options) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t s = 0; s < layout.sorts.size(); ++s) {
    int lo = std::max<int>(options.min_domain, static_cast<int>(layout.min_carrier(static_cast<int>(s))));
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int d = lo; d <= options.bounds.max_domain; ++d) {
        next.push_back(t);
        next.back().push_back(d);
      }
    out = std::move(next);
  }
  return out;
}

namespace {

enum class DigitKind { Relation, Domain, Cell };

struct Digit {
  DigitKind kind;
  int a = 0, b = 0;
  int radix = 1;
};

struct Plan {
  std::vector<std::vector<Matrix>> rels;  // per index
  std::vector<Digit> digits;
};

Plan plan(const KripkeModel& m, FrameMode mode) {
  const ModelLayout& layout = *m.layout;
  Plan p;
  for (std::size_t i = 0; i < layout.indices.size(); ++i) {
    p.rels.push_back(relations(m.worlds, layout.indices[i].conditions, mode));
    p.digits.push_back({DigitKind::Relation, static_cast<int>(i), 0, static_cast<int>(p.rels.back().size())});
  }
  for (std::size_t s = 0; s < layout.sorts.size(); ++s) {
    if (layout.sorts[s].domain == DomainKind::Constant) continue;
    for (int w = 0; w < m.worlds; ++w)
      p.digits.push_back({DigitKind::Domain, static_cast<int>(s), w, (1 << m.carrier[s]) - 1});
  }
  for (std::size_t k = 0; k < layout.symbols.size(); ++k) {
    const SymbolInfo& sym = layout.symbols[k];
    int radix = sym.predicate() ? 2 : m.carrier[sym.result_sort];
    for (std::size_t c = 0; c < m.tables[k].size(); ++c)
      p.digits.push_back({DigitKind::Cell, static_cast<int>(k), static_cast<int>(c), radix});
  }
  return p;
}

void apply(KripkeModel& m, const Plan& p, const Digit& d, int value) {
  switch (d.kind) {
    case DigitKind::Relation: m.access[d.a] = p.rels[d.a][value]; break;
    case DigitKind::Domain: {
      int mask = value + 1;
      int C = m.carrier[d.a];
      for (int e = 0; e < C; ++e) m.domain[d.a][d.b * C + e] = (mask >> e) & 1;
      break;
    }
    case DigitKind::Cell: m.tables[d.a][d.b] = value; break;
  }
}

}  // namespace

std::uint64_t count_candidates(const ModelLayout& layout, const EnumerateOptions& options) {
  const std::uint64_t limit = options.cap + 1;
  std::uint64_t total = 0;
  for (int W = options.min_worlds; W <= options.bounds.max_worlds; ++W) {
    if (W * W > kMaxRelationCells) return limit;
    std::uint64_t rel_count = 1;
    for (const auto& idx : layout.indices)
      rel_count = saturating_mul(rel_count, relations(W, idx.conditions, FrameMode::Conditions).size(), limit);
    for (const auto& sizes : carrier_sizes(layout, options)) {
      std::uint64_t n = rel_count;
      for (std::size_t s = 0; s < layout.sorts.size(); ++s) {
        if (layout.sorts[s].domain == DomainKind::Constant) continue;
        if (sizes[s] >= 63) return limit;
        for (int w = 0; w < W; ++w) n = saturating_mul(n, (std::uint64_t{1} << sizes[s]) - 1, limit);
      }
      for (const auto& sym : layout.symbols) {
        std::uint64_t cells = sym.flexible ? W : 1;
        for (int a : sym.arg_sorts) cells = saturating_mul(cells, sizes[a], limit);
        std::uint64_t radix = sym.predicate() ? 2 : sizes[sym.result_sort];
        for (std::uint64_t c = 0; c < cells && n < limit; ++c) n = saturating_mul(n, radix, limit);
      }
      total = std::min(total + n, limit);
    }
  }
  return total;
}

std::uint64_t enumerate_models(std::shared_ptr<const ModelLayout> layout, const EnumerateOptions& options,
                               const std::function<bool(const KripkeModel&)>& visit) {
  std::uint64_t candidates = count_candidates(*layout, options);
  if (candidates > options.cap)
    throw ResourceError("model enumeration needs more than " + std::to_string(options.cap) +
                        " candidates; lower the bounds or raise the cap");
  std::uint64_t visited = 0;
  for (int W = options.min_worlds; W <= options.bounds.max_worlds; ++W) {
    for (const auto& sizes : carrier_sizes(*layout, options)) {
      KripkeModel m(layout, W, sizes);
      Plan p = plan(m, options.frame_mode);
      bool empty = false;
      for (const auto& d : p.digits) empty = empty || d.radix == 0;
      if (empty) continue;
      std::vector<int> value(p.digits.size(), 0);
      for (std::size_t i = 0; i < p.digits.size(); ++i) apply(m, p, p.digits[i], 0);
      while (true) {
        if (domains_ok(m)) {
          ++visited;
          if (!visit(m)) return visited;
        }
        std::size_t k = p.digits.size();
        while (k > 0 && value[k - 1] + 1 == p.digits[k - 1].radix) --k;
        if (k == 0) break;
        ++value[k - 1];
        apply(m, p, p.digits[k - 1], value[k - 1]);
        for (std::size_t i = k; i < p.digits.size(); ++i) {
          value[i] = 0;
          apply(m, p, p.digits[i], 0);
        }
      }
    }
  }
  return visited;
}

}  // namespace tptpnc
