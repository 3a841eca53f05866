#include "skolem/maxsat.hpp"

#include <algorithm>
#include <map>

namespace skolem::opt {

using sat::Solver;
using sat::Status;

std::vector<Lit> totalizer(Solver& s, std::span<const Lit> inputs) {
  if (inputs.empty()) return {};
  if (inputs.size() == 1) return {inputs[0]};
  std::size_t mid = inputs.size() / 2;
  std::vector<Lit> a = totalizer(s, inputs.first(mid));
  std::vector<Lit> b = totalizer(s, inputs.subspan(mid));
  std::vector<Lit> out(a.size() + b.size());
  for (Lit& o : out) o = s.new_var();
  // a_i and b_j together imply out_{i+j+1}
  for (std::size_t i = 0; i <= a.size(); ++i)
    for (std::size_t j = 0; j <= b.size(); ++j) {
      if (i + j == 0) continue;
      std::vector<Lit> c;
      if (i > 0) c.push_back(-a[i - 1]);
      if (j > 0) c.push_back(-b[j - 1]);
      c.push_back(out[i + j - 1]);
      s.add_clause(c);
    }
  return out;
}

namespace {

struct Level {
  Status status = Status::Unknown;
  int cost = 0;
};

// MSU3 linear search on one set of softs, over a solver that already holds
// the hard clauses. Selector b_i implies soft i; cores relax selectors and
// raise the lower bound until a model meets it.
Level minimize(Solver& s, std::span<const Lit> softs) {
  std::vector<Lit> sel(softs.size());
  std::map<Lit, std::size_t> index;
  for (std::size_t i = 0; i < softs.size(); ++i) {
    sel[i] = s.new_var();
    s.add_clause({-sel[i], softs[i]});
    index[sel[i]] = i;
  }
  std::vector<bool> relaxed(softs.size(), false);
  std::vector<Lit> relaxedInputs, bound;
  int k = 0;
  for (;;) {
    std::vector<Lit> assumptions;
    for (std::size_t i = 0; i < softs.size(); ++i)
      if (!relaxed[i]) assumptions.push_back(sel[i]);
    Lit boundLit = 0;
    if (static_cast<std::size_t>(k) < bound.size()) {
      boundLit = -bound[static_cast<std::size_t>(k)];
      assumptions.push_back(boundLit);
    }
    Status st = s.solve(assumptions);
    if (st == Status::Unknown) return {Status::Unknown, k};
    if (st == Status::Sat) return {Status::Sat, k};
    const std::vector<Lit>& core = s.core();
    if (core.empty()) throw HardUnsat("hard constraints are unsatisfiable");
    bool grew = false;
    for (Lit c : core) {
      auto it = index.find(c);
      if (it == index.end() || relaxed[it->second]) continue;
      relaxed[it->second] = true;
      relaxedInputs.push_back(-sel[it->second]);
      grew = true;
    }
    if (grew) bound = totalizer(s, relaxedInputs);
    ++k;
  }
}

MaxSatResult finish(const Solver& s, std::span<const Lit> softs, int numVars) {
  MaxSatResult r;
  r.status = Status::Sat;
  const Assignment& m = s.model();
  r.model = Assignment(numVars);
  for (Var v = 1; v <= numVars; ++v) r.model.set(v, m[v]);
  for (std::size_t i = 0; i < softs.size(); ++i)
    if (!m.holds(softs[i])) r.violated.push_back(static_cast<int>(i));
  return r;
}

int max_var(const Cnf& hard, std::span<const Lit> softs) {
  int n = hard.numVars;
  for (Lit l : softs) n = std::max(n, var_of(l));
  return n;
}

}  // namespace

MaxSatResult maxsat(const Cnf& hard, std::span<const Lit> softs, const sat::Options& opts) {
  Solver s(opts);
  int n = max_var(hard, softs);
  s.ensure_vars(n);
  s.add_cnf(hard);
  Level l = minimize(s, softs);
  if (l.status != Status::Sat) return {};
  MaxSatResult r = finish(s, softs, n);
  if (static_cast<int>(r.violated.size()) != l.cost) throw InternalError("maxsat: witness cost differs from bound");
  return r;
}

MaxSatResult lexmaxsat(const Cnf& hard, std::span<const Soft> softs, const sat::Options& opts) {
  std::vector<Lit> lits;
  std::map<int, std::vector<Lit>, std::greater<>> levels;
  for (const Soft& x : softs) {
    lits.push_back(x.lit);
    levels[x.priority].push_back(x.lit);
  }
  Solver s(opts);
  int n = max_var(hard, lits);
  s.ensure_vars(n);
  s.add_cnf(hard);
  for (auto& [prio, ls] : levels) {
    Level l = minimize(s, ls);
    if (l.status != Status::Sat) return {};
    // Freeze: at most l.cost violations at this level from now on.
    std::vector<Lit> viol;
    for (Lit x : ls) viol.push_back(-x);
    std::vector<Lit> out = totalizer(s, viol);
    if (static_cast<std::size_t>(l.cost) < out.size()) s.add_clause({-out[static_cast<std::size_t>(l.cost)]});
  }
  Status st = s.solve();
  if (st != Status::Sat) {
    if (st == Status::Unsat) {
      if (levels.empty()) throw HardUnsat("hard constraints are unsatisfiable");
      throw InternalError("lexmaxsat: frozen levels became unsatisfiable");
    }
    return {};
  }
  return finish(s, lits, n);
}

}  // namespace skolem::opt
