#pragma once
// Instances shared by the engine tests and the acceptance binary.

#include <random>

#include "oracles.hpp"
#include "skolem/formula.hpp"
#include "skolem/engine.hpp"
#include "skolem/learner.hpp"

namespace fixture {

using namespace skolem;

// forall x1 x2 exists y1..y4:
// (x1 | x2 | y1) & (x2 | -y1 | y2) & (y3 | y4) & (-y3 | -y4)
// x1=1 x2=2 y1=3 y2=4 y3=5 y4=6
inline Spec example1() {
  Spec s;
  s.cnf.numVars = 6;
  s.cnf.clauses = {{1, 2, 3}, {2, -3, 4}, {5, 6}, {-5, -6}};
  s.inputs = {1, 2};
  s.outputs = {3, 4, 5, 6};
  return s;
}

// The worked example's three samples over (x1, x2, y1, y2, y3), with y4 = not y3.
inline learn::SampleMatrix example1_samples() {
  learn::SampleMatrix m({1, 2, 3, 4, 5, 6});
  for (auto r : {std::vector<int>{0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 1, 0}, {1, 1, 1, 0, 1, 0}}) {
    Assignment a(6);
    for (Var v = 1; v <= 6; ++v) a.set(v, r[static_cast<std::size_t>(v - 1)] != 0);
    m.add_row(a);
  }
  return m;
}

// x1..x6 = 1..6, y = 7. When x6 holds, y must equal the parity of x1..x5;
// otherwise y is free. y is neither unate nor defined by X, and every repair
// core needs all six inputs, so each repair fixes a single input point.
inline Spec parity_gate() {
  Spec s;
  s.cnf.numVars = 7;
  s.inputs = {1, 2, 3, 4, 5, 6};
  s.outputs = {7};
  for (int m = 0; m < 32; ++m) {
    Clause c{-6};
    int parity = 0;
    for (int i = 0; i < 5; ++i) {
      bool bit = (m >> i) & 1;
      parity ^= bit;
      c.push_back(bit ? -(i + 1) : (i + 1));
    }
    c.push_back(parity ? 7 : -7);
    s.cnf.clauses.push_back(c);
  }
  return s;
}

// Random 2QBF with 1..maxX inputs, 1..maxY outputs and 1..maxClauses
// clauses of length 2..4 (shorter clauses make most outputs unate).
inline Spec random_spec(std::mt19937_64& rng, int maxX = 6, int maxY = 6, int maxClauses = 25) {
  int nx = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxX));
  int ny = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxY));
  int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(maxClauses));
  Spec s;
  s.cnf.numVars = nx + ny;
  std::uniform_int_distribution<int> len(2, 4), var(1, nx + ny), sign(0, 1);
  for (int i = 0; i < m; ++i) {
    Clause c;
    for (int j = len(rng); j > 0; --j) c.push_back(sign(rng) ? var(rng) : -var(rng));
    if (normalize_clause(c)) s.cnf.clauses.push_back(c);
  }
  s.inputs = oracle::range_vars(nx);
  for (int i = 0; i < ny; ++i) s.outputs.push_back(nx + 1 + i);
  return s;
}

// Few samples and no unate detection: candidates start poor, so the repair
// loop does most of the work.
inline Config starved(Config c = {}) {
  c.samples = 2;
  c.unates = false;
  return c;
}

// Brute force: every X with a witness is solved by the grounded vector.
inline bool brute_valid(const Spec& spec, const FuncStore& st, const std::vector<Func>& grounded) {
  return !oracle::skolem_counterexample(spec.cnf, spec.inputs, [&](const Assignment& x) {
    Assignment a = x;
    for (std::size_t i = 0; i < spec.outputs.size(); ++i) a.set(spec.outputs[i], st.eval(grounded[i], x));
    return a;
  });
}

}  // namespace fixture
