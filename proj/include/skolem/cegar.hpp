#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"
#include "skolem/sat.hpp"
#include "skolem/skolem_vector.hpp"

namespace skolem::cegar {

struct Problem {
  Cnf base;     // F plus unate units: what the vector is certified against
  Cnf working;  // base plus definitional clauses; hard part of repair queries
  std::vector<Var> inputs, outputs;
};

/// F(X,Y) and not F(X,Y') and y'_i <-> psi_i(X,Y') for every output. The
/// primed block is a pure function image of X. Unsatisfiable iff the vector
/// is a Skolem vector for `base`.
struct ErrorEncoding {
  Cnf cnf;
  std::unordered_map<Var, Var> primed;  // y -> y'
};
ErrorEncoding build_error_formula(const FuncStore& store, const Problem& p, const SkolemVector& psi);

struct Counterexample {
  Assignment xy;    // over X and Y, satisfies F
  Assignment cand;  // cand[y] = value of y' (the candidates' output)
};

struct VerifyResult {
  sat::Status status = sat::Status::Unknown;  // Unsat = valid
  Counterexample sigma;
  bool valid() const { return status == sat::Status::Unsat; }
};
VerifyResult verify(const FuncStore& store, const Problem& p, const SkolemVector& psi, const sat::Options& opts = {});

enum class Mode { Plain, Lex };

/// Outputs whose candidate value must change at sigma[X], as a minimum set of
/// violated soft equalities y <-> sigma[y'] under working and X = sigma[X].
/// Lex mode favours later positions of `order`. Result is ascending in
/// order position; nullopt if the optimizer ran out of budget.
std::optional<std::vector<Var>> find_repair_candidates(const Problem& p, const Counterexample& sigma,
                                                       std::span<const Var> order, Mode mode,
                                                       const sat::Options& opts = {});

struct RepairOutcome {
  sat::Status status = sat::Status::Unknown;  // Unsat = repaired, Sat = not repairable at y
  Func beta = FuncStore::kTrue;
  std::vector<Var> followups;
};

/// Core-guided repair of psi[y] against sigma, with X and the outputs after y
/// in `order` fixed to their counterexample (primed) values. When y can keep
/// its value, followups lists the earlier outputs whose value in the witness
/// differs from sigma.
RepairOutcome repair_skf(FuncStore& store, const Problem& p, const Counterexample& sigma,
                         std::span<const Var> order, Var y, SkolemVector& psi, const sat::Options& opts = {});

// psi[y] := F with earlier outputs replaced by their candidates, y set to 1.
void self_substitute(FuncStore& store, const Problem& p, std::span<const Var> order, Var y, SkolemVector& psi);

/// Exact rebuild along `order`: every output not in `keep` gets the
/// self-substitution of F with all earlier outputs eliminated. `keep` entries
/// must already be exact (unates, definitions over later outputs).
void self_substitute_all(FuncStore& store, const Problem& p, std::span<const Var> order,
                         std::span<const Var> keep, SkolemVector& psi);

// True if the vector no longer produces sigma's primed values at sigma[X].
bool moved(const FuncStore& store, const Problem& p, const SkolemVector& psi, std::span<const Var> order,
           const Counterexample& sigma);

}  // namespace skolem::cegar
