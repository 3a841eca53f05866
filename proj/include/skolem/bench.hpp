#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "skolem/engine.hpp"

namespace skolem::bench {

struct Row {
  std::string instance;
  std::string status;  // run status, or "error"
  double time = 0;     // wall seconds
  bool solved = false;
  bool error = false;  // unreadable or malformed input; excluded from PAR-2
  std::string message;
  int unates = 0, unique = 0, learned = 0, repaired = 0, selfSubstituted = 0;
};

struct Report {
  std::vector<Row> rows;
  double timeout = 0;
  double par2 = 0;
  int solved = 0;
  int errors = 0;
  std::vector<std::string> warnings;
};

// Mean of (time if solved, else 2 * timeout) over the non-error rows; 0 when
// there are none.
double par2(std::span<const Row> rows, double timeout);

using Runner = std::function<Row(const std::string& path)>;

/// Runs every file through `runner`, up to `workers` at a time. Rows keep the
/// order of `files`.
Report run(const std::vector<std::string>& files, double timeout, const Runner& runner, int workers = 1);

// Files ending in .qdimacs or .cnf directly inside dir, sorted by name.
std::vector<std::string> list_instances(const std::string& dir);

// Parses and synthesizes one file with cfg; parse failures give error rows.
Runner synth_runner(const Config& cfg);

void write_csv(std::ostream& out, const Report& report);

}  // namespace skolem::bench
