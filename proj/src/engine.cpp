#include "skolem/engine.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "skolem/definability.hpp"
#include "skolem/sat.hpp"

namespace skolem {

namespace {

using Clock = std::chrono::steady_clock;

struct TimeUp {};
struct GaveUp {};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

class Run {
 public:
  Run(const Spec& spec, const Config& cfg, SynthResult& out)
      : spec_(spec), cfg_(cfg), out_(out), st_(out.store), stats_(out.stats) {
    if (cfg.timeout > 0)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.timeout));
    satOpts_.seed = cfg.seed;
    satOpts_.deadline = deadline_;
  }

  void go();

 private:
  void tick() const {
    if (deadline_ && Clock::now() >= *deadline_) throw TimeUp{};
  }
  // A solver Unknown is a timeout if the clock ran out, otherwise a give-up.
  [[noreturn]] void unknown() const {
    tick();
    throw GaveUp{};
  }
  void learn_candidates();
  void repair_loop();
  void repair_pass(const cegar::Counterexample& sigma, std::vector<Var> initial, TraceEntry& tr);
  void self_sub(Var y, TraceEntry& tr);
  bool determined(Var y) const { return fixed_.count(y) != 0; }

  const Spec& spec_;
  const Config& cfg_;
  SynthResult& out_;
  FuncStore& st_;
  RunStats& stats_;
  std::optional<Clock::time_point> deadline_;
  sat::Options satOpts_;

  cegar::Problem prob_;
  learn::DependsOn dep_;
  std::unordered_set<Var> fixed_;
  std::vector<Var> order_;
  std::unordered_map<Var, int> perVar_;
  cegar::Mode mode_ = cegar::Mode::Plain;
  long long followupTotal_ = 0, initialTotal_ = 0;
  bool usedSelfSub_ = false;
};

void Run::go() {
  const auto t0 = Clock::now();
  SkolemVector& psi = out_.candidates;
  psi = SkolemVector(spec_.outputs);

  sat::SolveResult whole = sat::solve(spec_.cnf, {}, satOpts_);
  if (whole.status == sat::Status::Unknown) unknown();
  if (whole.status == sat::Status::Unsat) {
    // No input has a witness: any vector is vacuously a Skolem vector.
    stats_.formulaUnsat = true;
    stats_.status = RunStatus::SolvedPreRepair;
    for (Var y : spec_.outputs) psi.state(y) = SkolemStatus::UnateNeg;
    out_.grounded = psi;
    return;
  }

  def::Options dopts;
  dopts.sat = satOpts_;
  dopts.unates = cfg_.unates;
  dopts.corePasses = cfg_.corePasses;
  dopts.proofBudget = cfg_.proofBudget;
  def::UniDefResult ud = def::unidef(st_, spec_, dopts);
  tick();
  psi = ud.psi;
  stats_.determined = ud.determined;
  fixed_.insert(ud.determined.begin(), ud.determined.end());
  for (auto& [y, ds] : ud.dependson) dep_[y] = ds;
  prob_ = cegar::Problem{std::move(ud.base), std::move(ud.working), spec_.inputs, spec_.outputs};
  stats_.tPreprocess = seconds_since(t0);

  if (fixed_.size() < spec_.outputs.size()) learn_candidates();
  order_ = learn::find_order(spec_.outputs, dep_);
  stats_.order = order_;

  const auto t1 = Clock::now();
  repair_loop();
  stats_.tRepair = seconds_since(t1);

  out_.grounded = ground(st_, psi, order_);
  if (stats_.iterations == 0)
    stats_.status = RunStatus::SolvedPreRepair;
  else
    stats_.status = usedSelfSub_ ? RunStatus::SolvedSelfSub : RunStatus::SolvedRepair;
}

void Run::learn_candidates() {
  auto t = Clock::now();
  learn::SampleMatrix data;
  if (cfg_.injectedSamples) {
    data = *cfg_.injectedSamples;
    for (Var v : spec_.inputs)
      if (!data.has(v)) throw std::invalid_argument("injected samples lack a column for an input");
    for (Var v : spec_.outputs)
      if (!data.has(v)) throw std::invalid_argument("injected samples lack a column for an output");
  } else {
    learn::SampleConfig sc;
    sc.count = cfg_.samples;
    sc.warmup = cfg_.warmup;
    sc.seed = cfg_.seed;
    data = learn::get_samples(prob_.working, spec_.inputs, spec_.outputs, stats_.determined, sc);
  }
  stats_.samples = data.rows();
  stats_.tSample = seconds_since(t);
  tick();

  t = Clock::now();
  stats_.chunks = learn::cluster_y(spec_.cnf, spec_.outputs, stats_.determined, cfg_.k, cfg_.s, cfg_.cluster, cfg_.seed);
  learn::TreeParams tp;
  tp.minImpurityDecrease = cfg_.impurity;
  tp.parallel = cfg_.parallelTrees;
  for (const auto& chunk : stats_.chunks) {
    learn::candidate_skf(st_, data, spec_.inputs, spec_.outputs, chunk, dep_, out_.candidates, tp);
    tick();
  }
  stats_.tLearn = seconds_since(t);
}

void Run::repair_loop() {
  SkolemVector& psi = out_.candidates;
  mode_ = cfg_.lex == LexPolicy::On ? cegar::Mode::Lex : cegar::Mode::Plain;
  int sinceSweep = 0;
  for (;;) {
    tick();
    cegar::VerifyResult vr = cegar::verify(st_, prob_, psi, satOpts_);
    if (vr.status == sat::Status::Unknown) unknown();
    if (vr.valid()) return;
    const cegar::Counterexample& sigma = vr.sigma;
    ++stats_.iterations;

    TraceEntry tr;
    tr.iteration = stats_.iterations;
    tr.mode = mode_;
    for (Var y : spec_.outputs) tr.cexSize += sigma.xy[y] != sigma.cand[y];

    if (++sinceSweep > cfg_.sweepAfter) {
      // Safety net: exact rebuild, valid by construction.
      cegar::self_substitute_all(st_, prob_, order_, stats_.determined, psi);
      ++stats_.sweeps;
      usedSelfSub_ = true;
      sinceSweep = 0;
      for (Var y : order_)
        if (!determined(y)) tr.selfSubstituted.push_back(y);
      if (cfg_.trace) stats_.trace.push_back(std::move(tr));
      continue;
    }

    auto ind = cegar::find_repair_candidates(prob_, sigma, order_, mode_, satOpts_);
    if (!ind) unknown();
    tr.ind = *ind;
    std::vector<Var> initial;
    for (Var y : *ind)
      if (!determined(y)) initial.push_back(y);
    repair_pass(sigma, initial, tr);
    if (cfg_.trace) stats_.trace.push_back(std::move(tr));
  }
}

void Run::self_sub(Var y, TraceEntry& tr) {
  cegar::self_substitute(st_, prob_, order_, y, out_.candidates);
  perVar_[y] = 0;
  ++stats_.selfSubCalls;
  usedSelfSub_ = true;
  tr.selfSubstituted.push_back(y);
}

void Run::repair_pass(const cegar::Counterexample& sigma, std::vector<Var> initial, TraceEntry& tr) {
  SkolemVector& psi = out_.candidates;
  std::unordered_map<Var, std::size_t> pos;
  for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;

  // Latest position first: a repair only reads later outputs, and followups
  // always sit earlier, so each output is visited at most once per pass.
  std::set<std::size_t> work;
  for (Var y : initial) work.insert(pos[y]);
  cegar::Counterexample cur = sigma;
  bool deadEnd = false;
  int added = 0;
  while (!work.empty()) {
    Var y = order_[*work.rbegin()];
    work.erase(std::prev(work.end()));
    ++stats_.repairCalls;
    cegar::RepairOutcome o = cegar::repair_skf(st_, prob_, cur, order_, y, psi, satOpts_);
    if (o.status == sat::Status::Unknown) unknown();
    if (o.status == sat::Status::Unsat) {
      ++stats_.repairsApplied;
      tr.repaired.push_back(y);
      if (++perVar_[y] > cfg_.selfSubThreshold) self_sub(y, tr);
      Assignment at = cur.xy;
      for (Var v : spec_.outputs) at.set(v, cur.cand[v]);
      cur.cand.set(y, st_.eval(psi.func(y), at));
      continue;
    }
    if (o.followups.empty()) deadEnd = true;
    for (Var f : o.followups) {
      if (determined(f) || !work.insert(pos[f]).second) continue;
      ++added;
      tr.followups.push_back(f);
    }
  }
  stats_.followups += added;
  followupTotal_ += added;
  initialTotal_ += static_cast<long long>(initial.size());

  const bool progress = cegar::moved(st_, prob_, psi, order_, sigma);
  const bool tooMany = followupTotal_ > static_cast<long long>(cfg_.lexRatio) * std::max<long long>(1, initialTotal_);
  if (!(deadEnd || !progress || tooMany || initial.empty())) return;
  if (mode_ == cegar::Mode::Plain && cfg_.lex == LexPolicy::Auto) {
    mode_ = cegar::Mode::Lex;
    stats_.escalatedToLex = true;
    return;
  }
  if (progress) return;
  std::vector<Var> targets = initial;
  if (targets.empty())
    for (Var y : tr.ind) targets.push_back(y);
  for (Var y : targets)
    if (!determined(y)) self_sub(y, tr);
}

nlohmann::json vars(const std::vector<Var>& vs) { return nlohmann::json(vs); }

}  // namespace

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::SolvedPreRepair: return "solved-prerepair";
    case RunStatus::SolvedRepair: return "solved-repair";
    case RunStatus::SolvedSelfSub: return "solved-selfsub";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::string stats_json(const RunStats& s, int indent) {
  nlohmann::json j;
  j["schema"] = 1;
  j["status"] = std::string(to_string(s.status));
  j["formula_unsat"] = s.formulaUnsat;
  j["counts"] = {{"unates", s.unates},
                 {"unique", s.unique},
                 {"learned", s.learned},
                 {"repaired", s.repaired},
                 {"self_substituted", s.selfSubstituted}};
  j["iterations"] = {{"counterexamples", s.iterations},
                     {"repair_calls", s.repairCalls},
                     {"repairs_applied", s.repairsApplied},
                     {"followups", s.followups},
                     {"self_substitutions", s.selfSubCalls},
                     {"sweeps", s.sweeps}};
  j["escalated_to_lex"] = s.escalatedToLex;
  j["samples"] = s.samples;
  j["determined"] = vars(s.determined);
  j["chunks"] = s.chunks;
  j["order"] = vars(s.order);
  j["times"] = {{"preprocess", s.tPreprocess},
                {"sample", s.tSample},
                {"learn", s.tLearn},
                {"repair", s.tRepair},
                {"total", s.tTotal}};
  if (!s.trace.empty()) {
    auto& arr = j["trace"] = nlohmann::json::array();
    for (const TraceEntry& t : s.trace)
      arr.push_back({{"iteration", t.iteration},
                     {"cex_size", t.cexSize},
                     {"mode", t.mode == cegar::Mode::Lex ? "lex" : "plain"},
                     {"ind", vars(t.ind)},
                     {"repaired", vars(t.repaired)},
                     {"followups", vars(t.followups)},
                     {"self_substituted", vars(t.selfSubstituted)}});
  }
  return j.dump(indent);
}

SynthResult synthesize(const Spec& spec, const Config& cfg) {
  if (cfg.k < 0 || cfg.s < 1 || cfg.samples < 0 || cfg.warmup < 0 || cfg.impurity < 0 || cfg.selfSubThreshold < 0 ||
      cfg.lexRatio < 0 || cfg.timeout < 0 || cfg.sweepAfter < 1)
    throw std::invalid_argument("invalid engine configuration");
  SynthResult out;
  const auto t0 = Clock::now();
  try {
    Run(spec, cfg, out).go();
  } catch (const TimeUp&) {
    out.stats.status = RunStatus::Timeout;
    out.grounded = SkolemVector();
  } catch (const GaveUp&) {
    out.stats.status = RunStatus::Unknown;
    out.grounded = SkolemVector();
  }
  out.stats.tTotal = seconds_since(t0);
  RunStats& s = out.stats;
  for (SkolemStatus st : out.candidates.status) {
    switch (st) {
      case SkolemStatus::UnatePos:
      case SkolemStatus::UnateNeg: ++s.unates; break;
      case SkolemStatus::Unique: ++s.unique; break;
      case SkolemStatus::Repaired: ++s.repaired; break;
      case SkolemStatus::SelfSubstituted: ++s.selfSubstituted; break;
      case SkolemStatus::Learned:
      case SkolemStatus::Empty: ++s.learned; break;  // Empty only on unfinished runs
    }
  }
  return out;
}

}  // namespace skolem
