#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/sat.hpp"

namespace skolem::opt {

struct Soft {
  Lit lit = 0;
  int priority = 0;
};

// The hard part of a query has no model.
class HardUnsat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MaxSatResult {
  sat::Status status = sat::Status::Unknown;  // Sat = optimum found
  std::vector<int> violated;                  // soft indices, ascending
  Assignment model;                           // witness over the hard variables
};

/// Exact partial MaxSAT with unit softs: minimizes the number of soft
/// literals false in a model of `hard`. Returns Unknown when the solver
/// budget or deadline in `opts` runs out. Throws HardUnsat.
MaxSatResult maxsat(const Cnf& hard, std::span<const Lit> softs, const sat::Options& opts = {});

/// Lexicographic variant: levels are optimized from the highest priority
/// down, each level's optimum frozen before the next.
MaxSatResult lexmaxsat(const Cnf& hard, std::span<const Soft> softs, const sat::Options& opts = {});

// Totalizer over `inputs`; returns o with o[j] implied by "at least j+1
// inputs true". Only the upward direction is encoded, which suffices for
// at-most bounds (assert -o[k] to allow at most k).
std::vector<Lit> totalizer(sat::Solver& s, std::span<const Lit> inputs);

}  // namespace skolem::opt
