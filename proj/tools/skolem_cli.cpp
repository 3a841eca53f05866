#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skolem/bench.hpp"
#include "skolem/definability.hpp"
#include "skolem/engine.hpp"
#include "skolem/io.hpp"

using namespace skolem;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUsage = 2, kTimeout = 3, kInternal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Spec load_spec(const std::string& path) {
  try {
    return parse_qdimacs(slurp(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Header of variable ids, then one 0/1 row per sample.
learn::SampleMatrix read_samples(const std::string& path) {
  std::istringstream in(slurp(path));
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<long> v;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stol(cell));
    return v;
  };
  if (!std::getline(in, line)) throw UsageError(path + ": empty sample file");
  std::vector<Var> cols;
  for (long v : split(line)) cols.push_back(static_cast<Var>(v));
  learn::SampleMatrix m(cols);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto vals = split(line);
    if (vals.size() != cols.size()) throw UsageError(path + ": row width differs from header");
    Assignment a;
    for (std::size_t i = 0; i < cols.size(); ++i) a.set(cols[i], vals[i] != 0);
    m.add_row(a);
  }
  return m;
}

struct EngineFlags {
  Config cfg;
  std::string cluster = "graph", lex = "auto", unates = "on", samplesFrom;
  bool seedGiven = false;

  void attach(CLI::App* app) {
    app->add_option("--k", cfg.k, "Neighbourhood radius for clustering")->check(CLI::NonNegativeNumber);
    app->add_option("--s", cfg.s, "Maximum chunk size")->check(CLI::PositiveNumber);
    app->add_option("--samples", cfg.samples, "Sample count (0 = automatic)")->check(CLI::NonNegativeNumber);
    app->add_option("--warmup", cfg.warmup, "Unbiased warm-up samples")->check(CLI::NonNegativeNumber);
    app->add_option("--impurity", cfg.impurity, "Minimum impurity decrease per split")->check(CLI::NonNegativeNumber);
    app->add_option("--self-sub-threshold", cfg.selfSubThreshold, "Repairs of one output before self-substitution")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--lex-ratio", cfg.lexRatio, "Followup ratio that switches to lexicographic selection")
        ->check(CLI::NonNegativeNumber);
    app->add_option_function<std::uint64_t>(
        "--seed", [this](std::uint64_t s) { cfg.seed = s, seedGiven = true; }, "Random seed (default $SKOLEM_SEED or 1)");
    app->add_option("--timeout", cfg.timeout, "Seconds, 0 = none")->check(CLI::NonNegativeNumber);
    app->add_option("--cluster", cluster, "Clustering mode")->check(CLI::IsMember({"graph", "random"}));
    app->add_option("--lex", lex, "Lexicographic repair selection")->check(CLI::IsMember({"auto", "on", "off"}));
    app->add_option("--unates", unates, "Unate detection")->check(CLI::IsMember({"on", "off"}));
    app->add_option("--core-passes", cfg.corePasses, "Deletion passes over definability cores")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--proof-budget", cfg.proofBudget, "Proof nodes allowed per definition");
    app->add_option("--sweep-after", cfg.sweepAfter, "Counterexamples before an exact rebuild")
        ->check(CLI::PositiveNumber);
    app->add_flag("--parallel-trees", cfg.parallelTrees, "Score tree splits in parallel");
    app->add_option("--samples-from", samplesFrom, "CSV of samples to use instead of sampling")
        ->check(CLI::ExistingFile);
  }

  Config resolve() {
    if (!seedGiven)
      if (const char* env = std::getenv("SKOLEM_SEED")) {
        try {
          cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw UsageError("SKOLEM_SEED is not a number");
        }
      }
    cfg.cluster = cluster == "random" ? learn::ClusterMode::Random : learn::ClusterMode::Graph;
    cfg.lex = lex == "on" ? LexPolicy::On : lex == "off" ? LexPolicy::Off : LexPolicy::Auto;
    cfg.unates = unates == "on";
    if (!samplesFrom.empty()) cfg.injectedSamples = read_samples(samplesFrom);
    return cfg;
  }
};

int exit_for(RunStatus s) {
  switch (s) {
    case RunStatus::Timeout: return kTimeout;
    case RunStatus::Unknown: return kInternal;
    default: return kOk;
  }
}

int cmd_synth(const std::string& file, const std::string& out, const std::string& statsPath, bool trace,
              EngineFlags& flags) {
  Spec spec = load_spec(file);
  Config cfg = flags.resolve();
  cfg.trace = trace;
  SynthResult r = synthesize(spec, cfg);
  if (!statsPath.empty()) write_file(statsPath, stats_json(r.stats) + "\n");
  std::cerr << "status " << to_string(r.stats.status) << " time " << r.stats.tTotal << "s\n";
  if (!r.stats.solved()) return exit_for(r.stats.status);
  std::string aag = write_aag(r.store, r.grounded, spec.inputs);
  if (out.empty())
    std::cout << aag;
  else
    write_file(out, aag);
  return kOk;
}

int cmd_verify(const std::string& file, const std::string& vector, double timeout) {
  Spec spec = load_spec(file);
  FuncStore st;
  AagCircuit c;
  try {
    c = read_aag(slurp(vector), st, spec.inputs);
  } catch (const ParseError& e) {
    std::cerr << vector << ": " << e.what() << "\n";
    return kInvalid;
  }
  if (c.outputs.size() != spec.outputs.size()) {
    std::cerr << "vector has " << c.outputs.size() << " outputs, formula has " << spec.outputs.size() << "\n";
    return kInvalid;
  }
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (timeout > 0)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
  switch (check_vector(spec, st, c.outputs, deadline)) {
    case CheckResult::Valid: std::cout << "valid\n"; return kOk;
    case CheckResult::Invalid: std::cout << "invalid\n"; return kInvalid;
    case CheckResult::Unknown: std::cout << "unknown\n"; return kTimeout;
  }
  return kInternal;
}

int cmd_bench(const std::string& dir, const std::string& csv, int workers, EngineFlags& flags) {
  Config cfg = flags.resolve();
  if (cfg.timeout <= 0) cfg.timeout = 3600;  // PAR-2 needs a finite limit
  if (!std::filesystem::is_directory(dir)) throw UsageError(dir + " is not a directory");
  bench::Report rep = bench::run(bench::list_instances(dir), cfg.timeout, bench::synth_runner(cfg), workers);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  if (csv.empty()) {
    bench::write_csv(std::cout, rep);
  } else {
    std::ofstream out(csv);
    if (!out) throw UsageError("cannot write " + csv);
    bench::write_csv(out, rep);
  }
  std::cerr << "instances " << rep.rows.size() << " solved " << rep.solved << " errors " << rep.errors << " PAR-2 "
            << rep.par2 << "\n";
  return kOk;
}

int cmd_defx(const std::string& file, EngineFlags& flags) {
  Spec spec = load_spec(file);
  Config cfg = flags.resolve();
  FuncStore st;
  def::Options o;
  o.unates = cfg.unates;
  o.corePasses = cfg.corePasses;
  o.proofBudget = cfg.proofBudget;
  o.sat.seed = cfg.seed;
  def::UniDefResult r = def::unidef(st, spec, o);
  nlohmann::json j;
  j["schema"] = 1;
  j["unates"] = r.unates;
  j["unique"] = r.unique;
  j["extract_failures"] = r.extractFailures;
  auto& rows = j["outputs"] = nlohmann::json::array();
  for (const auto& d : r.report) {
    nlohmann::json row = {{"var", d.y},
                          {"kind", std::string(def::to_string(d.kind))},
                          {"core", d.coreSize},
                          {"clauses", d.defClauses}};
    if (d.kind == def::DefKind::Unique) row["definition"] = st.to_prefix(r.psi.func(d.y));
    rows.push_back(row);
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skolem function synthesis for 2QBF specifications"};
  app.require_subcommand(1);

  EngineFlags synthFlags, benchFlags, defxFlags;
  std::string synthFile, synthOut, synthStats;
  bool synthTrace = false;
  auto* synth = app.add_subcommand("synth", "Synthesize a Skolem vector as an AIGER circuit");
  synth->add_option("file", synthFile, "QDIMACS input")->required();
  synth->add_option("-o,--output", synthOut, "AAG output (default stdout)");
  synth->add_option("--stats", synthStats, "Write run statistics as JSON");
  synth->add_flag("--trace", synthTrace, "Include a per-counterexample trace in the statistics");
  synthFlags.attach(synth);

  std::string verFile, verVec;
  double verTimeout = 0;
  auto* verify = app.add_subcommand("verify", "Check a vector against a specification");
  verify->add_option("file", verFile, "QDIMACS input")->required();
  verify->add_option("vector", verVec, "AAG vector")->required();
  verify->add_option("--timeout", verTimeout, "Seconds, 0 = none")->check(CLI::NonNegativeNumber);

  std::string benchDir, benchCsv;
  int workers = 1;
  auto* bench = app.add_subcommand("bench", "Run every instance in a directory and report PAR-2");
  bench->add_option("dir", benchDir, "Directory of .qdimacs/.cnf files")->required();
  bench->add_option("--csv", benchCsv, "CSV report (default stdout)");
  bench->add_option("--workers", workers, "Instances run concurrently")->check(CLI::PositiveNumber);
  benchFlags.attach(bench);

  std::string defxFile;
  auto* defx = app.add_subcommand("defx", "Report unates and unique definitions");
  defx->add_option("file", defxFile, "QDIMACS input")->required();
  defxFlags.attach(defx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*synth) return cmd_synth(synthFile, synthOut, synthStats, synthTrace, synthFlags);
    if (*verify) return cmd_verify(verFile, verVec, verTimeout);
    if (*bench) return cmd_bench(benchDir, benchCsv, workers, benchFlags);
    if (*defx) return cmd_defx(defxFile, defxFlags);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
