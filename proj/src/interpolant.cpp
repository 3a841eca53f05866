#include <algorithm>
#include <unordered_set>

#include "skolem/definability.hpp"
#include "skolem/encode.hpp"

namespace skolem::def {

Func interpolant(FuncStore& store, const sat::ResolutionProof& proof, const Cnf& a, const Cnf& b) {
  std::unordered_set<Var> inA, inB;
  for (const Clause& c : a.clauses)
    for (Lit l : c) inA.insert(var_of(l));
  for (const Clause& c : b.clauses)
    for (Lit l : c) inB.insert(var_of(l));
  auto shared = [&](Var v) { return inA.count(v) && inB.count(v); };

  std::vector<Func> itp(proof.nodes.size());
  for (std::size_t i = 0; i < proof.nodes.size(); ++i) {
    const auto& n = proof.nodes[i];
    if (n.leaf) {
      if (n.part == sat::Partition::B) {
        itp[i] = FuncStore::kTrue;
        continue;
      }
      Func f = FuncStore::kFalse;
      for (Lit l : n.clause)
        if (shared(var_of(l))) f = store.lor(f, store.lit(l));
      itp[i] = f;
      continue;
    }
    Func l = itp[static_cast<std::size_t>(n.left)], r = itp[static_cast<std::size_t>(n.right)];
    itp[i] = inB.count(n.pivot) ? store.land(l, r) : store.lor(l, r);
  }
  return itp.back();
}

std::optional<Func> extract_definition(FuncStore& store, const Cnf& f, Var y, std::span<const Var> s,
                                       const Options& opts) {
  const int n = f.numVars;
  Cnf a = f;
  a.add({y});
  Cnf b;
  b.numVars = 2 * n;
  for (const Clause& c : f.clauses) {
    Clause z;
    for (Lit l : c) z.push_back(l > 0 ? l + n : l - n);
    b.add(std::move(z));
  }
  for (Var v : s) {
    if (v == y) continue;
    b.add({-v, v + n});
    b.add({v, -(v + n)});
  }
  b.add({-(y + n)});
  sat::Options so = opts.sat;
  if (opts.extractConflicts >= 0) so.conflictBudget = opts.extractConflicts;
  sat::ProofResult pr = sat::solve_with_proof(a, b, so);
  if (pr.status == sat::Status::Unknown) return std::nullopt;
  if (pr.status == sat::Status::Sat)
    throw InternalError("extract_definition: output " + std::to_string(y) + " is not defined by the given set");
  if (pr.proof.nodes.size() > opts.proofBudget) return std::nullopt;
  Func h = interpolant(store, pr.proof, a, b);
  for (Var v : store.support(h))
    if (std::find(s.begin(), s.end(), v) == s.end())
      throw InternalError("extract_definition: interpolant leaves the defining set");
  if (!entails_definition(store, f, y, h))
    throw InternalError("extract_definition: interpolant for output " + std::to_string(y) + " does not verify");
  return h;
}

}  // namespace skolem::def
