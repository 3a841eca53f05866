#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "skolem/formula.hpp"

namespace skolem::sat {

enum class Status { Sat, Unsat, Unknown };

std::string_view to_string(Status s);

// Clause origin for interpolation. Clauses added without proof logging are
// tagged A.
enum class Partition : std::uint8_t { A, B };

/// Binary resolution DAG. Leaves are input clauses; each internal node
/// resolves its two parents on `pivot`. Nodes are stored children-first and
/// the last node derives the empty clause.
struct ResolutionProof {
  struct Node {
    bool leaf = true;
    Partition part = Partition::A;  // leaves only
    Var pivot = 0;                  // internal only
    int left = -1, right = -1;      // internal only
    Clause clause;                  // sorted, duplicate-free
  };
  std::vector<Node> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  // Replays every resolution. Returns an empty string on success, otherwise a
  // description of the first broken step.
  std::string check() const;
};

struct Options {
  std::uint64_t seed = 0;
  bool proof = false;               // record resolution chains (disables learnt minimization)
  std::int64_t conflictBudget = -1; // per solve() call; -1 = unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// CDCL solver: two-watched-literal propagation, VSIDS, first-UIP learning,
/// Luby restarts, incremental solving under assumptions with final-conflict
/// cores, optional resolution-proof logging and biased random phases for
/// sampling.
class Solver {
 public:
  explicit Solver(Options opts = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  Var new_var();
  // Makes variables 1..n available.
  void ensure_vars(int n);
  int num_vars() const;

  // Returns false once the clause database is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits, Partition part = Partition::A);
  bool add_clause(std::initializer_list<Lit> lits, Partition part = Partition::A) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()), part);
  }
  void add_cnf(const Cnf& f, Partition part = Partition::A);

  Status solve(std::span<const Lit> assumptions = {});
  Status solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  // Valid after Sat: total assignment over 1..num_vars().
  const Assignment& model() const;
  // Valid after Unsat: assumption literals whose conjunction with the
  // clauses is unsatisfiable (empty if the clauses alone are).
  const std::vector<Lit>& core() const;
  // Valid after Unsat with proof logging and no assumptions involved.
  ResolutionProof proof() const;
  std::size_t proof_size() const;

  // Per-variable probability of deciding true; empty restores phase saving.
  void set_phase_bias(std::vector<double> bias);
  // Replaces VSIDS activities by random values (fresh variable order).
  void randomize_order();
  void set_conflict_budget(std::int64_t budget);
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d);
  // DRAT-style log of learnt clauses and deletions.
  void set_drat(std::ostream* out);

  std::uint64_t conflicts() const;
  std::uint64_t decisions() const;

 private:
  struct Impl;
  Impl* impl_;
};

// One-shot helpers.
struct SolveResult {
  Status status = Status::Unknown;
  Assignment model;
  std::vector<Lit> core;
};
SolveResult solve(const Cnf& f, std::span<const Lit> assumptions = {}, const Options& opts = {});

struct ProofResult {
  Status status = Status::Unknown;
  Assignment model;
  ResolutionProof proof;
};
// Refutes A and B together, recording a proof whose leaves carry their side.
ProofResult solve_with_proof(const Cnf& a, const Cnf& b, const Options& opts = {});

// Deletion-based shrinking of an assumption core; each pass tries to drop
// every literal once. Keeps the solver's clauses untouched.
std::vector<Lit> minimize_core(Solver& s, std::vector<Lit> core, int passes = 1);

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Draws n models of f. Each sample restarts from level 0 with a fresh random
/// variable order and decision phases drawn from `bias` (index = variable,
/// missing entries default to 0.5). Deterministic for a fixed seed; no
/// uniformity guarantee. Throws SamplingError if f is unsatisfiable.
std::vector<Assignment> sample(const Cnf& f, std::span<const double> bias, int n, std::uint64_t seed);

}  // namespace skolem::sat
