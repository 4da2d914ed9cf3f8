// Reference semantics for propositional modal formulas, kept independent of
// the library's evaluator: its own formula type, bitmask frames and a direct
// recursive truth definition.

#ifndef TPTPNC_TESTS_PROP_ORACLE_HPP_
#define TPTPNC_TESTS_PROP_ORACLE_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct Prop;
using PropPtr = std::shared_ptr<const Prop>;

struct Prop {
  enum Kind { Atom, True, False, Not, And, Or, Imp, Iff, Box, Dia } kind = Atom;
  int atom = 0;
  PropPtr a, b;
};

inline PropPtr atom(int i) { return std::make_shared<Prop>(Prop{Prop::Atom, i, nullptr, nullptr}); }
inline PropPtr unary(Prop::Kind k, PropPtr a) { return std::make_shared<Prop>(Prop{k, 0, std::move(a), nullptr}); }
inline PropPtr binary(Prop::Kind k, PropPtr a, PropPtr b) {
  return std::make_shared<Prop>(Prop{k, 0, std::move(a), std::move(b)});
}

inline const char* atom_name(int i) {
  static const char* names[] = {"p", "q", "r", "s"};
  return names[i];
}

// TPTP text; every compound is parenthesized.
inline std::string to_tptp(const Prop& f) {
  switch (f.kind) {
    case Prop::Atom: return atom_name(f.atom);
    case Prop::True: return "$true";
    case Prop::False: return "$false";
    case Prop::Not: return "~ (" + to_tptp(*f.a) + ")";
    case Prop::Box: return "{$box}(" + to_tptp(*f.a) + ")";
    case Prop::Dia: return "{$dia}(" + to_tptp(*f.a) + ")";
    case Prop::And: return "(" + to_tptp(*f.a) + " & " + to_tptp(*f.b) + ")";
    case Prop::Or: return "(" + to_tptp(*f.a) + " | " + to_tptp(*f.b) + ")";
    case Prop::Imp: return "(" + to_tptp(*f.a) + " => " + to_tptp(*f.b) + ")";
    case Prop::Iff: return "(" + to_tptp(*f.a) + " <=> " + to_tptp(*f.b) + ")";
  }
  return "";
}

inline int depth(const Prop& f) {
  int d = 0;
  if (f.a) d = std::max(d, depth(*f.a));
  if (f.b) d = std::max(d, depth(*f.b));
  return f.kind == Prop::Atom || f.kind == Prop::True || f.kind == Prop::False ? 0 : d + 1;
}

// Worlds 0..n-1; succ[w] has bit v set when w sees v; val[a] has bit w set
// when atom a holds at w.
struct Frame {
  int worlds = 1;
  std::vector<std::uint32_t> succ;
  std::vector<std::uint32_t> val;
};

inline bool holds(const Frame& m, int w, const Prop& f) {
  switch (f.kind) {
    case Prop::Atom: return (m.val[f.atom] >> w) & 1;
    case Prop::True: return true;
    case Prop::False: return false;
    case Prop::Not: return !holds(m, w, *f.a);
    case Prop::And: return holds(m, w, *f.a) && holds(m, w, *f.b);
    case Prop::Or: return holds(m, w, *f.a) || holds(m, w, *f.b);
    case Prop::Imp: return !holds(m, w, *f.a) || holds(m, w, *f.b);
    case Prop::Iff: return holds(m, w, *f.a) == holds(m, w, *f.b);
    case Prop::Box:
      for (int v = 0; v < m.worlds; ++v)
        if (((m.succ[w] >> v) & 1) && !holds(m, v, *f.a)) return false;
      return true;
    case Prop::Dia:
      for (int v = 0; v < m.worlds; ++v)
        if (((m.succ[w] >> v) & 1) && holds(m, v, *f.a)) return true;
      return false;
  }
  return false;
}

inline PropPtr random_prop(std::mt19937& rng, int atoms, int max_depth) {
  std::uniform_int_distribution<int> leaf(0, atoms + 1);
  if (max_depth == 0 || std::uniform_int_distribution<int>(0, 5)(rng) == 0) {
    int k = leaf(rng);
    if (k < atoms) return atom(k);
    return std::make_shared<Prop>(Prop{k == atoms ? Prop::True : Prop::False, 0, nullptr, nullptr});
  }
  static const Prop::Kind kinds[] = {Prop::Not, Prop::And, Prop::Or, Prop::Imp, Prop::Iff, Prop::Box, Prop::Dia,
                                     Prop::Box, Prop::Dia};
  Prop::Kind k = kinds[std::uniform_int_distribution<int>(0, 8)(rng)];
  PropPtr a = random_prop(rng, atoms, max_depth - 1);
  if (k == Prop::Not || k == Prop::Box || k == Prop::Dia) return unary(k, a);
  return binary(k, a, random_prop(rng, atoms, max_depth - 1));
}

// `n` pairwise distinct formulas (by text), deterministic in the seed.
inline std::vector<PropPtr> distinct_formulas(std::size_t n, int atoms, int max_depth, unsigned seed) {
  std::mt19937 rng(seed);
  std::set<std::string> seen;
  std::vector<PropPtr> out;
  while (out.size() < n) {
    PropPtr f = random_prop(rng, atoms, max_depth);
    if (seen.insert(to_tptp(*f)).second) out.push_back(f);
  }
  return out;
}

// Number of models with `worlds` worlds, one relation and `atoms` atoms.
inline std::uint64_t model_count(int worlds, int atoms) {
  return std::uint64_t{1} << (worlds * worlds + atoms * worlds);
}

// Every frame condition checked on the successor masks directly.
inline bool reflexive(const Frame& m) {
  for (int w = 0; w < m.worlds; ++w)
    if (!((m.succ[w] >> w) & 1)) return false;
  return true;
}
inline bool symmetric(const Frame& m) {
  for (int w = 0; w < m.worlds; ++w)
    for (int v = 0; v < m.worlds; ++v)
      if (((m.succ[w] >> v) & 1) && !((m.succ[v] >> w) & 1)) return false;
  return true;
}
inline bool serial(const Frame& m) {
  for (int w = 0; w < m.worlds; ++w)
    if (!m.succ[w]) return false;
  return true;
}
inline bool transitive(const Frame& m) {
  for (int w = 0; w < m.worlds; ++w)
    for (int v = 0; v < m.worlds; ++v)
      if (((m.succ[w] >> v) & 1) && (m.succ[v] & ~m.succ[w])) return false;
  return true;
}
inline bool euclidean(const Frame& m) {
  for (int w = 0; w < m.worlds; ++w)
    for (int v = 0; v < m.worlds; ++v)
      if (((m.succ[w] >> v) & 1) && (m.succ[w] & ~m.succ[v])) return false;
  return true;
}

}  // namespace oracle

#endif  // TPTPNC_TESTS_PROP_ORACLE_HPP_
