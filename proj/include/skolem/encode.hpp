#pragma once

#include <functional>
#include <span>
#include <unordered_map>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"

namespace skolem {

// F|_{v=b}: satisfied clauses dropped, falsified literal removed. An empty
// clause in the result marks unsatisfiability.
Cnf cofactor(const Cnf& f, Var v, bool b);
Spec cofactor(const Spec& f, Var v, bool b);

// Copy of f with variables renamed through map (unmapped variables kept).
// numVars becomes max(f.numVars, largest image).
Cnf rename_vars(const Cnf& f, const std::unordered_map<Var, Var>& map);

/// Appends to `out` a definitional encoding of not(AND clauses) over fresh
/// variables allocated from out. Returns a literal equivalent to the negation
/// of the clause set under every total assignment of its variables.
Lit negate_cnf(std::span<const Clause> clauses, Cnf& out);

/// Tseitin encoding of FuncStore DAGs into a CNF. Shares definitions across
/// calls; leaves go through an optional literal mapping (used to evaluate a
/// function on a renamed copy of its variables).
class TseitinEncoder {
 public:
  using LeafMap = std::function<Lit(Var)>;

  TseitinEncoder(const FuncStore& store, Cnf& out, LeafMap leaf = {})
      : store_(store), out_(out), leaf_(std::move(leaf)) {}

  Lit encode(Func f);
  const std::unordered_map<std::uint32_t, Lit>& aux() const { return aux_; }

 private:
  Lit leaf_lit(Var v) const { return leaf_ ? leaf_(v) : v; }

  const FuncStore& store_;
  Cnf& out_;
  LeafMap leaf_;
  std::unordered_map<std::uint32_t, Lit> aux_;
  Lit trueLit_ = 0;
};

struct TseitinResult {
  std::vector<Clause> clauses;
  Lit out = 0;
  std::unordered_map<std::uint32_t, Lit> aux;  // node id -> defining literal
};

// One-shot encoding; fresh variables start above numVars, which is updated.
TseitinResult tseitin(const FuncStore& store, Func f, int& numVars);

// Appends clauses for lhs <-> rhs.
void add_equiv(Cnf& out, Lit lhs, Lit rhs);

}  // namespace skolem
