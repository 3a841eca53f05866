#include "skolem/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <ostream>

#include "skolem/io.hpp"

namespace skolem::bench {

double par2(std::span<const Row> rows, double timeout) {
  double sum = 0;
  int n = 0;
  for (const Row& r : rows) {
    if (r.error) continue;
    sum += r.solved ? r.time : 2 * timeout;
    ++n;
  }
  return n ? sum / n : 0.0;
}

Report run(const std::vector<std::string>& files, double timeout, const Runner& runner, int workers) {
  Report rep;
  rep.timeout = timeout;
  rep.rows.resize(files.size());
  const long n = static_cast<long>(files.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, workers)) if (workers > 1)
  for (long i = 0; i < n; ++i) {
    const auto& path = files[static_cast<std::size_t>(i)];
    Row r;
    try {
      r = runner(path);
    } catch (const std::exception& e) {
      r.error = true;
      r.status = "error";
      r.message = e.what();
    }
    r.instance = std::filesystem::path(path).filename().string();
    rep.rows[static_cast<std::size_t>(i)] = std::move(r);
  }
  for (const Row& r : rep.rows) {
    rep.solved += r.solved;
    if (r.error) {
      ++rep.errors;
      rep.warnings.push_back(r.instance + ": excluded from PAR-2 (" + r.message + ")");
    }
  }
  rep.par2 = par2(rep.rows, timeout);
  return rep;
}

std::vector<std::string> list_instances(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto ext = e.path().extension().string();
    if (ext == ".qdimacs" || ext == ".cnf") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Runner synth_runner(const Config& cfg) {
  return [cfg](const std::string& path) {
    Row r;
    Spec spec;
    try {
      spec = read_qdimacs_file(path);
    } catch (const std::exception& e) {
      r.error = true;
      r.status = "error";
      r.message = e.what();
      return r;
    }
    auto t0 = std::chrono::steady_clock::now();
    SynthResult res = synthesize(spec, cfg);
    r.time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.status = std::string(to_string(res.stats.status));
    r.solved = res.stats.solved();
    r.unates = res.stats.unates;
    r.unique = res.stats.unique;
    r.learned = res.stats.learned;
    r.repaired = res.stats.repaired;
    r.selfSubstituted = res.stats.selfSubstituted;
    return r;
  };
}

void write_csv(std::ostream& out, const Report& report) {
  out << "instance,status,time,unates,unique,learned,repaired,self_substituted\n";
  for (const Row& r : report.rows)
    out << r.instance << ',' << r.status << ',' << r.time << ',' << r.unates << ',' << r.unique << ',' << r.learned
        << ',' << r.repaired << ',' << r.selfSubstituted << '\n';
}

}  // namespace skolem::bench
