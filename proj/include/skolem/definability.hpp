#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"
#include "skolem/sat.hpp"
#include "skolem/skolem_vector.hpp"

namespace skolem::def {

struct Options {
  sat::Options sat;
  int corePasses = 1;                      // deletion passes over the Padoa core
  std::size_t proofBudget = 4'000'000;     // proof nodes; larger proofs skip extraction
  std::int64_t extractConflicts = 200'000; // per extraction refutation; -1 = none
  bool unates = true;
  bool extract = true;                     // false: only unates are determined
};

struct Unate {
  Var y = 0;
  bool value = false;  // true: positive unate, psi = 1
};

/// Sequential unate detection over `outputs` in order. Every unate found adds
/// its unit clause to `work` before the next variable is checked.
std::vector<Unate> find_unates(Cnf& work, std::span<const Var> outputs, const sat::Options& opts = {});

struct Defined {
  sat::Status status = sat::Status::Unknown;  // Unsat = defined, Sat = not defined
  bool defined() const { return status == sat::Status::Unsat; }
  std::vector<Var> core;                      // subset of S sufficient to define y
};

/// Incremental Padoa checks over one formula: F(W), a renamed copy F(Z) and a
/// selector-guarded equality w_j <-> z_j for every variable.
class PadoaChecker {
 public:
  PadoaChecker(const Cnf& f, const Options& opts = {});
  Defined check(Var y, std::span<const Var> s);

 private:
  int n_;
  int corePasses_;
  sat::Solver solver_;
};

Defined check_defined(const Cnf& f, Var y, std::span<const Var> s, const Options& opts = {});

// Interpolant of A and B from a refutation of A and B together, over the
// variables occurring in both (McMillan's system).
Func interpolant(FuncStore& store, const sat::ResolutionProof& proof, const Cnf& a, const Cnf& b);

/// Definition of y over s, as a Craig interpolant. nullopt when the proof
/// exceeds the budget or the refutation runs out of conflicts. Throws
/// InternalError if y is not defined over s or the result fails to verify.
std::optional<Func> extract_definition(FuncStore& store, const Cnf& f, Var y, std::span<const Var> s,
                                       const Options& opts = {});

class NotDefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truth table of y over s, one pair of SAT calls per s-assignment. Rows
/// where F has no model read 0. nullopt if |s| > limit; throws NotDefined if
/// some s-assignment allows both values of y.
std::optional<Func> define_by_enumeration(FuncStore& store, const Cnf& f, Var y, std::span<const Var> s,
                                          int limit = 16);

// Checks F |= y <-> h with two SAT calls.
bool entails_definition(const FuncStore& store, const Cnf& f, Var y, Func h);

enum class DefKind { UnatePos, UnateNeg, Unique, Undefined, ExtractFailed };
std::string_view to_string(DefKind k);

struct DefRecord {
  Var y = 0;
  DefKind kind = DefKind::Undefined;
  std::size_t coreSize = 0;
  std::size_t defClauses = 0;  // Tseitin clauses retained for the definition
};

struct UniDefResult {
  SkolemVector psi;                    // determined outputs filled in
  std::vector<Var> determined;         // U, in the order found
  std::unordered_map<Var, std::vector<Var>> dependson;
  Cnf base;                            // F plus unate units
  Cnf working;                         // base plus y <-> psi for unique definitions
  std::vector<DefRecord> report;       // one per output, declared order
  int unates = 0, unique = 0, extractFailures = 0;
};

/// Unates first, then for each remaining output in declared order a
/// definability check against the inputs and all earlier outputs; defined
/// outputs get an interpolated definition over the core.
UniDefResult unidef(FuncStore& store, const Spec& spec, const Options& opts = {});

}  // namespace skolem::def
