#include <gtest/gtest.h>

#include <random>

#include "tptpnc/sat.hpp"

using namespace tptpnc;

namespace {

using Cnf = std::vector<std::vector<int>>;

bool satisfied(const Cnf& cnf, std::uint32_t assignment) {
  for (const auto& c : cnf) {
    bool any = false;
    for (int l : c) {
      bool v = (assignment >> (std::abs(l) - 1)) & 1;
      if (l > 0 ? v : !v) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

bool brute_force(const Cnf& cnf, int vars, const std::vector<int>& assumptions = {}) {
  for (std::uint32_t a = 0; a < (1u << vars); ++a) {
    bool ok = true;
    for (int l : assumptions) ok = ok && (((a >> (std::abs(l) - 1)) & 1) == (l > 0));
    if (ok && satisfied(cnf, a)) return true;
  }
  return false;
}

Cnf random_cnf(std::mt19937& rng, int vars, int clauses, int width) {
  std::uniform_int_distribution<int> var(1, vars), sign(0, 1);
  Cnf cnf;
  for (int i = 0; i < clauses; ++i) {
    std::vector<int> c;
    for (int k = 0; k < width; ++k) c.push_back(sign(rng) ? var(rng) : -var(rng));
    cnf.push_back(c);
  }
  return cnf;
}

}  // namespace

TEST(Solver, Trivial) {
  Solver s;
  int a = s.new_var(), b = s.new_var();
  s.add_clause({a, b});
  s.add_clause({-a});
  ASSERT_TRUE(s.solve());
  EXPECT_FALSE(s.value(a));
  EXPECT_TRUE(s.value(b));
  s.add_clause({-b});
  EXPECT_FALSE(s.solve());
}

TEST(Solver, EmptyClause) {
  Solver s;
  s.new_var();
  s.add_clause({});
  EXPECT_FALSE(s.solve());
}

TEST(Solver, RandomAgainstBruteForce) {
  std::mt19937 rng(7);
  int sat = 0, unsat = 0;
  for (int round = 0; round < 400; ++round) {
    const int vars = 4 + round % 9;
    Cnf cnf = random_cnf(rng, vars, static_cast<int>(vars * 4.3), 3);
    Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const auto& c : cnf) s.add_clause(c);
    bool expected = brute_force(cnf, vars);
    bool got = s.solve();
    ASSERT_EQ(got, expected) << "round " << round;
    if (got) {
      std::uint32_t a = 0;
      for (int v = 1; v <= vars; ++v)
        if (s.value(v)) a |= 1u << (v - 1);
      EXPECT_TRUE(satisfied(cnf, a)) << "round " << round;
    }
    (got ? sat : unsat)++;
  }
  EXPECT_GT(sat, 50);
  EXPECT_GT(unsat, 50);
}

TEST(Solver, AssumptionsAreIncremental) {
  std::mt19937 rng(11);
  for (int round = 0; round < 100; ++round) {
    const int vars = 10;
    Cnf cnf = random_cnf(rng, vars, 30, 3);
    Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const auto& c : cnf) s.add_clause(c);
    std::uniform_int_distribution<int> var(1, vars), sign(0, 1);
    for (int q = 0; q < 5; ++q) {
      std::vector<int> assume;
      for (int k = 0; k < 3; ++k) assume.push_back(sign(rng) ? var(rng) : -var(rng));
      bool got = s.solve(assume);
      ASSERT_EQ(got, brute_force(cnf, vars, assume)) << round << "/" << q;
      if (got)
        for (int l : assume) EXPECT_TRUE(s.lit_value(l));
    }
    EXPECT_EQ(s.solve(), brute_force(cnf, vars));
  }
}

TEST(Solver, Pigeonhole) {
  // 5 pigeons, 4 holes
  Solver s;
  auto x = [](int p, int h) { return p * 4 + h + 1; };
  for (int i = 0; i < 20; ++i) s.new_var();
  for (int p = 0; p < 5; ++p) s.add_clause({x(p, 0), x(p, 1), x(p, 2), x(p, 3)});
  for (int h = 0; h < 4; ++h)
    for (int p = 0; p < 5; ++p)
      for (int q = p + 1; q < 5; ++q) s.add_clause({-x(p, h), -x(q, h)});
  EXPECT_FALSE(s.solve());
}

TEST(Circuit, GatesMatchTruthTables) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Solver s;
      Circuit c(s);
      int x = c.fresh(), y = c.fresh();
      int g_and = c.and2(x, y), g_or = c.or2(x, y), g_imp = c.implies(x, y), g_iff = c.iff(x, y),
          g_xor = c.xor2(x, y);
      ASSERT_TRUE(s.solve({a ? x : -x, b ? y : -y}));
      EXPECT_EQ(s.lit_value(g_and), a && b);
      EXPECT_EQ(s.lit_value(g_or), a || b);
      EXPECT_EQ(s.lit_value(g_imp), !a || b);
      EXPECT_EQ(s.lit_value(g_iff), a == b);
      EXPECT_EQ(s.lit_value(g_xor), a != b);
    }
}

TEST(Circuit, Folding) {
  Solver s;
  Circuit c(s);
  int x = c.fresh();
  EXPECT_EQ(c.and_of({x, c.top()}), x);
  EXPECT_EQ(c.and_of({x, -x}), c.bottom());
  EXPECT_EQ(c.or_of({x, -x}), c.top());
  EXPECT_EQ(c.or_of({}), c.bottom());
  EXPECT_EQ(c.iff(x, x), c.top());
  int y = c.fresh();
  EXPECT_EQ(c.and2(x, y), c.and2(y, x));
  EXPECT_EQ(c.iff(-x, y), -c.iff(x, y));
}
