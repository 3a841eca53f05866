#pragma once
// Brute-force reference computations for small formulas. Test-only; nothing
// here shares code with the solver, optimizer or synthesis paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"

namespace oracle {

using skolem::Assignment;
using skolem::Clause;
using skolem::Cnf;
using skolem::Lit;
using skolem::Var;

// Assignment of vars[i] = bit i of mask, on top of base.
inline Assignment assign_bits(const std::vector<Var>& vars, std::uint64_t mask, Assignment base) {
  for (std::size_t i = 0; i < vars.size(); ++i) base.set(vars[i], (mask >> i) & 1);
  return base;
}

inline bool eval_clause(const Clause& c, const Assignment& a) {
  for (Lit l : c)
    if (a.assigned(skolem::var_of(l)) && a[skolem::var_of(l)] == (l > 0)) return true;
  return false;
}

inline bool eval_cnf(const std::vector<Clause>& cs, const Assignment& a) {
  for (const Clause& c : cs)
    if (!eval_clause(c, a)) return false;
  return true;
}

inline std::vector<Var> range_vars(int n) {
  std::vector<Var> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return v;
}

// Calls fn for every total assignment of vars (others unassigned).
inline void for_all(const std::vector<Var>& vars, int numVars, const std::function<void(const Assignment&)>& fn) {
  for (std::uint64_t m = 0; m < (1ull << vars.size()); ++m) fn(assign_bits(vars, m, Assignment(numVars)));
}

inline bool satisfiable(const Cnf& f, const std::vector<Lit>& units = {}) {
  bool found = false;
  std::vector<Var> vars = range_vars(f.numVars);
  for_all(vars, f.numVars, [&](const Assignment& a) {
    if (found) return;
    for (Lit u : units)
      if (a[skolem::var_of(u)] != (u > 0)) return;
    if (eval_cnf(f.clauses, a)) found = true;
  });
  return found;
}

// Does some model of f extend `partial`?
inline bool extends(const Cnf& f, const Assignment& partial) {
  std::vector<Var> free;
  for (Var v = 1; v <= f.numVars; ++v)
    if (!partial.assigned(v)) free.push_back(v);
  for (std::uint64_t m = 0; m < (1ull << free.size()); ++m) {
    Assignment a = partial;
    for (std::size_t i = 0; i < free.size(); ++i) a.set(free[i], (m >> i) & 1);
    if (eval_cnf(f.clauses, a)) return true;
  }
  return false;
}

// F defines y over S iff no S-assignment admits models with both y values.
inline bool defines(const Cnf& f, Var y, const std::vector<Var>& s) {
  for (std::uint64_t m = 0; m < (1ull << s.size()); ++m) {
    Assignment a = assign_bits(s, m, Assignment(f.numVars));
    Assignment a1 = a, a0 = a;
    a1.set(y, true);
    a0.set(y, false);
    if (extends(f, a1) && extends(f, a0)) return false;
  }
  return true;
}

// Positive unate: every model with y=0 stays a model with y=1 (negative:
// the other way round).
inline bool unate(const Cnf& f, Var y, bool positive) {
  bool ok = true;
  for_all(range_vars(f.numVars), f.numVars, [&](const Assignment& a) {
    if (!ok || a[y] == positive) return;
    Assignment flipped = a;
    flipped.set(y, positive);
    if (eval_cnf(f.clauses, a) && !eval_cnf(f.clauses, flipped)) ok = false;
  });
  return ok;
}

inline bool equivalent(const skolem::FuncStore& st, skolem::Func a, skolem::Func b, const std::vector<Var>& vars,
                       int numVars) {
  bool eq = true;
  for_all(vars, numVars, [&](const Assignment& x) {
    if (st.eval(a, x) != st.eval(b, x)) eq = false;
  });
  return eq;
}

// Minimum number of violated soft literals over models of hard.
inline std::optional<int> min_violations(const Cnf& hard, const std::vector<Lit>& softs) {
  std::optional<int> best;
  std::vector<Var> vars = range_vars(hard.numVars);
  for_all(vars, hard.numVars, [&](const Assignment& a) {
    if (!eval_cnf(hard.clauses, a)) return;
    int v = 0;
    for (Lit s : softs)
      if (a[skolem::var_of(s)] != (s > 0)) ++v;
    if (!best || v < *best) best = v;
  });
  return best;
}

// Lexicographically smallest violation vector, levels listed high to low.
inline std::optional<std::vector<int>> lex_min_violations(const Cnf& hard, const std::vector<Lit>& softs,
                                                          const std::vector<int>& priority) {
  std::vector<int> levels(priority.begin(), priority.end());
  std::sort(levels.rbegin(), levels.rend());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::optional<std::vector<int>> best;
  std::vector<Var> vars = range_vars(hard.numVars);
  for_all(vars, hard.numVars, [&](const Assignment& a) {
    if (!eval_cnf(hard.clauses, a)) return;
    std::vector<int> vec(levels.size(), 0);
    for (std::size_t i = 0; i < softs.size(); ++i) {
      if (a[skolem::var_of(softs[i])] == (softs[i] > 0)) continue;
      auto it = std::find(levels.begin(), levels.end(), priority[i]);
      ++vec[static_cast<std::size_t>(it - levels.begin())];
    }
    if (!best || vec < *best) best = vec;
  });
  return best;
}

// First X-assignment where some Y satisfies f but out(X) does not.
inline std::optional<Assignment> skolem_counterexample(const Cnf& f, const std::vector<Var>& xs,
                                                       const std::function<Assignment(const Assignment&)>& out) {
  for (std::uint64_t m = 0; m < (1ull << xs.size()); ++m) {
    Assignment x = assign_bits(xs, m, Assignment(f.numVars));
    if (!extends(f, x)) continue;
    if (!eval_cnf(f.clauses, out(x))) return x;
  }
  return std::nullopt;
}

// Random function over vars given by its truth table.
inline skolem::Func random_func(skolem::FuncStore& st, std::mt19937_64& rng, const std::vector<Var>& vars) {
  std::function<skolem::Func(std::size_t)> build = [&](std::size_t i) -> skolem::Func {
    if (i == vars.size()) return st.constant(rng() & 1);
    skolem::Func hi = build(i + 1), lo = build(i + 1);
    return st.ite(st.var(vars[i]), hi, lo);
  };
  return build(0);
}

inline Cnf random_cnf(std::mt19937_64& rng, int numVars, int numClauses, int maxLen) {
  Cnf f;
  f.numVars = numVars;
  std::uniform_int_distribution<int> len(1, maxLen), var(1, numVars), sign(0, 1);
  for (int i = 0; i < numClauses; ++i) {
    Clause c;
    int l = len(rng);
    for (int j = 0; j < l; ++j) c.push_back(sign(rng) ? var(rng) : -var(rng));
    if (skolem::normalize_clause(c)) f.clauses.push_back(c);
  }
  return f;
}

}  // namespace oracle
