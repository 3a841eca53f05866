#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/cegar.hpp"
#include "skolem/formula.hpp"
#include "skolem/func.hpp"
#include "skolem/learner.hpp"
#include "skolem/skolem_vector.hpp"

namespace skolem {

// Auto starts with plain MaxSAT and switches to lexicographic selection when
// plain repairs stall; On uses lexicographic selection from the start.
enum class LexPolicy { Auto, On, Off };

struct Config {
  int k = 3;
  int s = 5;
  int samples = 0;  // 0: clamp(50 * |Y \ U|, 1000, 10000)
  int warmup = 500;
  double impurity = 0.005;
  int selfSubThreshold = 10;
  int lexRatio = 50;
  std::uint64_t seed = 1;
  double timeout = 0;  // seconds, 0 = none
  learn::ClusterMode cluster = learn::ClusterMode::Graph;
  LexPolicy lex = LexPolicy::Auto;
  bool unates = true;
  int corePasses = 1;
  std::size_t proofBudget = 4'000'000;
  int sweepAfter = 1000;  // counterexamples before an exact rebuild of all candidates
  bool parallelTrees = false;
  bool trace = false;
  // Replaces sampling; columns must cover X and Y.
  std::optional<learn::SampleMatrix> injectedSamples;
};

enum class RunStatus { SolvedPreRepair, SolvedRepair, SolvedSelfSub, Timeout, Unknown };
std::string_view to_string(RunStatus s);

struct TraceEntry {
  int iteration = 0;
  int cexSize = 0;  // outputs where the candidates disagree with sigma[Y]
  cegar::Mode mode = cegar::Mode::Plain;
  std::vector<Var> ind;
  std::vector<Var> repaired, followups, selfSubstituted;
};

struct RunStats {
  RunStatus status = RunStatus::Unknown;
  bool formulaUnsat = false;
  // Final provenance of each output; these partition Y.
  int unates = 0, unique = 0, learned = 0, repaired = 0, selfSubstituted = 0;
  int iterations = 0;      // counterexamples processed
  int repairCalls = 0;     // repair queries
  int repairsApplied = 0;  // repairs that changed a candidate
  int followups = 0;
  int selfSubCalls = 0;
  int sweeps = 0;
  bool escalatedToLex = false;
  int samples = 0;
  std::vector<Var> determined;
  std::vector<std::vector<Var>> chunks;
  std::vector<Var> order;
  double tPreprocess = 0, tSample = 0, tLearn = 0, tRepair = 0, tTotal = 0;
  std::vector<TraceEntry> trace;

  bool solved() const {
    return status == RunStatus::SolvedPreRepair || status == RunStatus::SolvedRepair ||
           status == RunStatus::SolvedSelfSub;
  }
};

std::string stats_json(const RunStats& stats, int indent = 2);

struct SynthResult {
  FuncStore store;
  SkolemVector candidates;  // as learned and repaired; may mention outputs
  SkolemVector grounded;    // over X only; empty on failure
  RunStats stats;
};

/// Unique-definition preprocessing, sampling, clustering, tree learning, then
/// verify/repair until the error formula is unsatisfiable. Timeout and solver
/// give-up are reported in stats.status; InternalError escapes.
SynthResult synthesize(const Spec& spec, const Config& cfg = {});

enum class CheckResult { Valid, Invalid, Unknown };

/// Independent certificate check of a grounded vector: satisfiable iff some
/// input admits an output satisfying F while psi's output does not. Uses only
/// the encoders and the SAT solver.
CheckResult check_vector(const Spec& spec, const FuncStore& store, const std::vector<Func>& psi,
                         std::optional<std::chrono::steady_clock::time_point> deadline = {});

}  // namespace skolem
