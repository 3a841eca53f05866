#include "skolem/cegar.hpp"

#include <algorithm>
#include <unordered_set>

#include "skolem/encode.hpp"
#include "skolem/maxsat.hpp"

namespace skolem::cegar {

namespace {

Lit value_lit(Var v, bool b) { return b ? v : -v; }

std::unordered_map<Var, std::size_t> positions(std::span<const Var> order) {
  std::unordered_map<Var, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

}  // namespace

ErrorEncoding build_error_formula(const FuncStore& store, const Problem& p, const SkolemVector& psi) {
  ErrorEncoding e;
  e.cnf = p.working;
  e.cnf.numVars = std::max(e.cnf.numVars, p.base.numVars);
  for (Var y : p.outputs) e.primed[y] = e.cnf.fresh();

  Cnf copy = rename_vars(p.base, e.primed);
  Lit notF = negate_cnf(copy.clauses, e.cnf);
  e.cnf.add({notF});

  TseitinEncoder enc(store, e.cnf, [&](Var v) -> Lit {
    auto it = e.primed.find(v);
    return it == e.primed.end() ? v : it->second;
  });
  for (Var y : p.outputs) add_equiv(e.cnf, e.primed.at(y), enc.encode(psi.func(y)));
  return e;
}

VerifyResult verify(const FuncStore& store, const Problem& p, const SkolemVector& psi, const sat::Options& opts) {
  ErrorEncoding e = build_error_formula(store, p, psi);
  sat::SolveResult r = sat::solve(e.cnf, {}, opts);
  VerifyResult out;
  out.status = r.status;
  if (r.status != sat::Status::Sat) return out;
  for (Var x : p.inputs) out.sigma.xy.set(x, r.model[x]);
  for (Var y : p.outputs) {
    out.sigma.xy.set(y, r.model[y]);
    out.sigma.cand.set(y, r.model[e.primed.at(y)]);
  }
  return out;
}

std::optional<std::vector<Var>> find_repair_candidates(const Problem& p, const Counterexample& sigma,
                                                       std::span<const Var> order, Mode mode,
                                                       const sat::Options& opts) {
  Cnf hard = p.working;
  for (Var x : p.inputs) hard.add({value_lit(x, sigma.xy[x])});
  auto pos = positions(order);

  std::vector<opt::Soft> softs;
  for (Var y : order) softs.push_back({value_lit(y, sigma.cand[y]), static_cast<int>(pos[y]) + 1});
  opt::MaxSatResult r;
  if (mode == Mode::Lex) {
    r = opt::lexmaxsat(hard, softs, opts);
  } else {
    std::vector<Lit> lits;
    for (const auto& s : softs) lits.push_back(s.lit);
    r = opt::maxsat(hard, lits, opts);
  }
  if (r.status != sat::Status::Sat) return std::nullopt;
  // Soft i belongs to order[i], so ascending indices are ascending positions.
  std::vector<Var> ind;
  for (int i : r.violated) ind.push_back(order[static_cast<std::size_t>(i)]);
  return ind;
}

RepairOutcome repair_skf(FuncStore& store, const Problem& p, const Counterexample& sigma,
                         std::span<const Var> order, Var y, SkolemVector& psi, const sat::Options& opts) {
  auto pos = positions(order);
  const std::size_t at = pos.at(y);
  const bool target = sigma.cand[y];

  sat::Solver s(opts);
  s.add_cnf(p.working);
  // X first and y last: deletion drops X literals before output literals.
  std::vector<Lit> xs, hat;
  for (Var x : p.inputs) xs.push_back(value_lit(x, sigma.xy[x]));
  for (std::size_t i = at + 1; i < order.size(); ++i) hat.push_back(value_lit(order[i], sigma.cand[order[i]]));
  std::vector<Lit> assumptions = xs;
  assumptions.insert(assumptions.end(), hat.begin(), hat.end());
  assumptions.push_back(value_lit(y, target));

  RepairOutcome out;
  out.status = s.solve(assumptions);
  if (out.status == sat::Status::Sat) {
    const Assignment& rho = s.model();
    // y's value is consistent with everything it may read; blame the outputs
    // that read y instead.
    for (std::size_t i = 0; i < at; ++i)
      if (rho[order[i]] != sigma.cand[order[i]]) out.followups.push_back(order[i]);
    return out;
  }
  if (out.status != sat::Status::Unsat) return out;

  std::vector<Lit> core = s.core();
  std::unordered_set<Lit> inCore(core.begin(), core.end());
  std::vector<Lit> ordered;
  for (Lit l : assumptions)
    if (inCore.count(l)) ordered.push_back(l);
  core = sat::minimize_core(s, ordered, 1);

  std::unordered_set<Var> hatVars;
  for (Lit l : hat) hatVars.insert(var_of(l));
  std::vector<Lit> pick;
  for (Lit l : core)
    if (hatVars.count(var_of(l))) pick.push_back(l);
  if (pick.empty())
    for (Lit l : core)
      if (var_of(l) != y) pick.push_back(l);

  std::vector<Func> lits;
  for (Lit l : pick) lits.push_back(store.lit(l));
  out.beta = store.and_all(lits);
  Func& f = psi.func(y);
  f = target ? store.land(f, !out.beta) : store.lor(f, out.beta);
  psi.state(y) = SkolemStatus::Repaired;
  return out;
}

void self_substitute(FuncStore& store, const Problem& p, std::span<const Var> order, Var y, SkolemVector& psi) {
  Func g = store.cnf(p.base.clauses);
  for (Var v : order) {
    if (v == y) break;
    g = store.substitute(g, {{v, psi.func(v)}});
  }
  psi.func(y) = store.cofactor(g, y, true);
  psi.state(y) = SkolemStatus::SelfSubstituted;
}

void self_substitute_all(FuncStore& store, const Problem& p, std::span<const Var> order,
                         std::span<const Var> keep, SkolemVector& psi) {
  std::unordered_set<Var> fixed(keep.begin(), keep.end());
  Func g = store.cnf(p.base.clauses);
  for (Var v : order) {
    if (!fixed.count(v)) {
      psi.func(v) = store.cofactor(g, v, true);
      psi.state(v) = SkolemStatus::SelfSubstituted;
    }
    g = store.substitute(g, {{v, psi.func(v)}});
  }
}

bool moved(const FuncStore& store, const Problem& p, const SkolemVector& psi, std::span<const Var> order,
           const Counterexample& sigma) {
  Assignment xs;
  for (Var x : p.inputs) xs.set(x, sigma.xy[x]);
  Assignment now = evaluate_vector(store, psi, std::vector<Var>(order.begin(), order.end()), xs);
  return std::any_of(p.outputs.begin(), p.outputs.end(), [&](Var y) { return now[y] != sigma.cand[y]; });
}

}  // namespace skolem::cegar
