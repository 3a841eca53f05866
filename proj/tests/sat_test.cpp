#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "skolem/encode.hpp"
#include "skolem/sat.hpp"

using namespace skolem;
using namespace skolem::sat;

namespace {

Cnf make(std::initializer_list<Clause> cs, int n) {
  Cnf f;
  f.numVars = n;
  for (auto c : cs) f.clauses.push_back(c);
  return f;
}

Options seeded(std::uint64_t seed) {
  Options o;
  o.seed = seed;
  return o;
}

const Cnf kEx1 = make({{1, 2, 3}, {2, -3, 4}, {5, 6}, {-5, -6}}, 6);

// Leaves of the proof must be clauses of the matching side.
void expect_leaves_from(const ResolutionProof& p, const Cnf& a, const Cnf& b) {
  for (const auto& n : p.nodes) {
    if (!n.leaf) continue;
    const Cnf& side = n.part == Partition::A ? a : b;
    bool found = false;
    for (Clause c : side.clauses) {
      normalize_clause(c);
      if (c == n.clause) found = true;
    }
    EXPECT_TRUE(found);
  }
}

}  // namespace

TEST(Solve, UnitAgainstAssumption) {
  Solver s;
  s.add_clause({1});
  EXPECT_EQ(s.solve({-1}), Status::Unsat);
  EXPECT_EQ(s.core(), std::vector<Lit>{-1});
  EXPECT_EQ(s.solve(), Status::Sat);
}

TEST(Solve, Example1Sat) {
  SolveResult r = solve(kEx1);
  ASSERT_EQ(r.status, Status::Sat);
  EXPECT_TRUE(satisfies(r.model, kEx1.clauses));
}

TEST(Solve, CoreNeedsBoth) {
  Solver s;
  s.add_clause({1, 2});
  s.add_clause({-1, -2});
  ASSERT_EQ(s.solve({1, 2}), Status::Unsat);
  std::vector<Lit> core = s.core();
  std::sort(core.begin(), core.end());
  EXPECT_EQ(core, (std::vector<Lit>{1, 2}));
}

TEST(Solve, EmptyClauseDatabase) {
  Solver s;
  s.ensure_vars(3);
  EXPECT_EQ(s.solve(), Status::Sat);
  EXPECT_EQ(s.model().size(), 3);
  EXPECT_FALSE(s.add_clause(std::span<const Lit>{}));
  EXPECT_EQ(s.solve(), Status::Unsat);
  EXPECT_TRUE(s.core().empty());
}

TEST(Solve, FuzzAgainstTruthTable) {
  std::mt19937_64 rng(101);
  int unsat = 0;
  for (int it = 0; it < 1200; ++it) {
    int n = 1 + static_cast<int>(rng() % 12);
    int m = static_cast<int>(rng() % (5 * n + 1));
    Cnf f = oracle::random_cnf(rng, n, m, 3);
    std::vector<Lit> assumptions;
    for (int k = static_cast<int>(rng() % 3); k > 0; --k) {
      Var v = 1 + static_cast<Var>(rng() % static_cast<unsigned>(n));
      assumptions.push_back(rng() % 2 ? v : -v);
    }
    Solver s(seeded(rng()));
    s.add_cnf(f);
    Status st = s.solve(assumptions);
    bool expected = oracle::satisfiable(f, assumptions);
    ASSERT_EQ(st == Status::Sat, expected) << "instance " << it;
    if (st == Status::Sat) {
      ASSERT_TRUE(satisfies(s.model(), f.clauses));
      for (Lit a : assumptions) ASSERT_TRUE(s.model().holds(a));
    } else {
      ++unsat;
      std::vector<Lit> core = s.core();
      for (Lit c : core) ASSERT_NE(std::find(assumptions.begin(), assumptions.end(), c), assumptions.end());
      ASSERT_FALSE(oracle::satisfiable(f, core));
      // Independent fresh solve on the core alone.
      ASSERT_EQ(solve(f, core).status, Status::Unsat);
    }
  }
  EXPECT_GT(unsat, 100);
}

TEST(Solve, IncrementalAgreesWithOracle) {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 100; ++it) {
    int n = 4 + static_cast<int>(rng() % 8);
    Cnf f = oracle::random_cnf(rng, n, 2 * n, 3);
    Solver s;
    s.add_cnf(f);
    for (int q = 0; q < 10; ++q) {
      std::vector<Lit> as;
      for (int k = 0; k < 3; ++k) {
        Var v = 1 + static_cast<Var>(rng() % static_cast<unsigned>(n));
        as.push_back(rng() % 2 ? v : -v);
      }
      ASSERT_EQ(s.solve(as) == Status::Sat, oracle::satisfiable(f, as));
    }
  }
}

TEST(Solve, Deterministic) {
  std::mt19937_64 rng(107);
  for (int it = 0; it < 50; ++it) {
    Cnf f = oracle::random_cnf(rng, 30, 100, 3);
    SolveResult a = solve(f, {}, seeded(5));
    SolveResult b = solve(f, {}, seeded(5));
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.model, b.model);
  }
}

TEST(Solve, PigeonholeIsUnsat) {
  // 6 pigeons, 5 holes.
  const int P = 6, H = 5;
  Cnf f;
  f.numVars = P * H;
  auto x = [&](int p, int h) { return p * H + h + 1; };
  for (int p = 0; p < P; ++p) {
    Clause c;
    for (int h = 0; h < H; ++h) c.push_back(x(p, h));
    f.add(c);
  }
  for (int h = 0; h < H; ++h)
    for (int p = 0; p < P; ++p)
      for (int q = p + 1; q < P; ++q) f.add({-x(p, h), -x(q, h)});
  EXPECT_EQ(solve(f).status, Status::Unsat);
  Options o;
  o.proof = true;
  Cnf empty;
  ProofResult r = solve_with_proof(f, empty, o);
  ASSERT_EQ(r.status, Status::Unsat);
  EXPECT_EQ(r.proof.check(), "");
}

TEST(Solve, ConflictBudgetGivesUnknown) {
  const int P = 9, H = 8;
  Cnf f;
  f.numVars = P * H;
  auto x = [&](int p, int h) { return p * H + h + 1; };
  for (int p = 0; p < P; ++p) {
    Clause c;
    for (int h = 0; h < H; ++h) c.push_back(x(p, h));
    f.add(c);
  }
  for (int h = 0; h < H; ++h)
    for (int p = 0; p < P; ++p)
      for (int q = p + 1; q < P; ++q) f.add({-x(p, h), -x(q, h)});
  Solver s;
  s.add_cnf(f);
  s.set_conflict_budget(10);
  EXPECT_EQ(s.solve(), Status::Unknown);
}

TEST(Proof, SingleResolution) {
  ProofResult r = solve_with_proof(make({{1}}, 1), make({{-1}}, 1));
  ASSERT_EQ(r.status, Status::Unsat);
  EXPECT_EQ(r.proof.check(), "");
  const auto& root = r.proof.nodes[static_cast<std::size_t>(r.proof.root())];
  EXPECT_FALSE(root.leaf);
  EXPECT_EQ(root.pivot, 1);
  EXPECT_TRUE(root.clause.empty());
  EXPECT_EQ(r.proof.nodes.size(), 3u);
}

TEST(Proof, PadoaForXorPair) {
  // F(W) with w1=1, w2=2; F(Z) with z1=3, z2=4. Equal on y1; w2 and not z2.
  Cnf a = make({{1, 2}, {-1, -2}, {2}}, 4);
  Cnf b = make({{3, 4}, {-3, -4}, {-1, 3}, {1, -3}, {-4}}, 4);
  ProofResult r = solve_with_proof(a, b);
  ASSERT_EQ(r.status, Status::Unsat);
  EXPECT_EQ(r.proof.check(), "");
  expect_leaves_from(r.proof, a, b);
}

TEST(Proof, SatisfiablePartitions) {
  Cnf a = make({{1, 2}}, 2);
  ProofResult r = solve_with_proof(a, a);
  ASSERT_EQ(r.status, Status::Sat);
  EXPECT_TRUE(satisfies(r.model, a.clauses));
}

TEST(Proof, FuzzReplays) {
  std::mt19937_64 rng(109);
  int refuted = 0;
  for (int it = 0; it < 400; ++it) {
    int n = 3 + static_cast<int>(rng() % 10);
    Cnf a = oracle::random_cnf(rng, n, 2 * n, 3);
    Cnf b = oracle::random_cnf(rng, n, 2 * n, 3);
    Options o;
    o.seed = rng();
    ProofResult r = solve_with_proof(a, b, o);
    Cnf both = a;
    both.append(b);
    ASSERT_EQ(r.status == Status::Sat, oracle::satisfiable(both));
    if (r.status == Status::Unsat) {
      ++refuted;
      ASSERT_EQ(r.proof.check(), "") << "instance " << it;
      expect_leaves_from(r.proof, a, b);
    }
  }
  EXPECT_GT(refuted, 50);
}

TEST(Proof, CheckDetectsBrokenStep) {
  ProofResult r = solve_with_proof(make({{1, 2}, {-1}}, 2), make({{-2}}, 2));
  ASSERT_EQ(r.status, Status::Unsat);
  ResolutionProof p = r.proof;
  p.nodes.back().pivot = 7;
  EXPECT_NE(p.check(), "");
}

TEST(Core, Minimize) {
  Solver s;
  s.add_clause({-1, -2});
  s.ensure_vars(6);
  std::vector<Lit> as = {3, 1, 4, 2, 5};
  ASSERT_EQ(s.solve(as), Status::Unsat);
  std::vector<Lit> core = minimize_core(s, s.core());
  std::sort(core.begin(), core.end());
  EXPECT_EQ(core, (std::vector<Lit>{1, 2}));
}

TEST(Sample, ClauseProperty) {
  Cnf f = make({{1, 2}}, 2);
  std::vector<double> bias(3, 0.5);
  auto ss = sample(f, bias, 100, 1);
  ASSERT_EQ(ss.size(), 100u);
  for (const auto& a : ss) EXPECT_TRUE(satisfies(a, f.clauses));
}

TEST(Sample, ForcedLiteral) {
  Cnf f = make({{1}}, 1);
  for (double b : {0.0, 0.5, 1.0}) {
    std::vector<double> bias(2, b);
    for (const auto& a : sample(f, bias, 10, 3)) EXPECT_TRUE(a[1]);
  }
}

TEST(Sample, Example1Entailment) {
  std::vector<double> bias(7, 0.5);
  auto ss = sample(kEx1, bias, 500, 9);
  ASSERT_EQ(ss.size(), 500u);
  for (const auto& a : ss) {
    EXPECT_TRUE(satisfies(a, kEx1.clauses));
    EXPECT_NE(a[5], a[6]);
  }
}

TEST(Sample, DeterministicAndVaried) {
  std::vector<double> bias(7, 0.5);
  auto a = sample(kEx1, bias, 200, 4);
  auto b = sample(kEx1, bias, 200, 4);
  EXPECT_EQ(a, b);
  std::set<std::vector<bool>> distinct;
  for (const auto& s : a) {
    std::vector<bool> row;
    for (Var v = 1; v <= 6; ++v) row.push_back(s[v]);
    distinct.insert(row);
  }
  EXPECT_GT(distinct.size(), 10u);
}

TEST(Sample, BiasShiftsFrequencies) {
  // Unconstrained variable: biased phases should dominate.
  Cnf f = make({{1, 2}}, 3);
  std::vector<double> hi(4, 0.9), lo(4, 0.1);
  auto count = [](const std::vector<Assignment>& ss) {
    int c = 0;
    for (const auto& s : ss) c += s[3];
    return c;
  };
  EXPECT_GT(count(sample(f, hi, 400, 2)), 300);
  EXPECT_LT(count(sample(f, lo, 400, 2)), 100);
}

TEST(Sample, UnsatThrows) {
  std::vector<double> bias;
  EXPECT_THROW(sample(make({{1}, {-1}}, 1), bias, 5, 0), SamplingError);
}

TEST(Drat, LogsLearntClauses) {
  std::mt19937_64 rng(113);
  Cnf f = oracle::random_cnf(rng, 40, 190, 3);
  std::ostringstream log;
  Solver s;
  s.set_drat(&log);
  s.add_cnf(f);
  s.solve();
  if (s.conflicts() > 0) {
    EXPECT_FALSE(log.str().empty());
  }
}
