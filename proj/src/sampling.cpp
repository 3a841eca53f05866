#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "skolem/learner.hpp"
#include "skolem/sat.hpp"

namespace skolem::learn {

SampleMatrix::SampleMatrix(std::vector<Var> columns) : columns_(std::move(columns)), data_(columns_.size()) {
  for (std::size_t i = 0; i < columns_.size(); ++i) index_[columns_[i]] = i;
}

void SampleMatrix::add_row(const Assignment& a) {
  for (std::size_t i = 0; i < columns_.size(); ++i) data_[i].push_back(a.holds(columns_[i]) ? 1 : 0);
  ++rows_;
}

void SampleMatrix::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (int r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << int(data_[i][static_cast<std::size_t>(r)]);
    out << '\n';
  }
}

int default_sample_count(std::size_t freeOutputs) {
  return static_cast<int>(std::clamp<std::size_t>(50 * freeOutputs, 1000, 10000));
}

SampleMatrix get_samples(const Cnf& work, std::span<const Var> inputs, std::span<const Var> outputs,
                         std::span<const Var> determined, const SampleConfig& cfg) {
  std::unordered_set<Var> fixed(determined.begin(), determined.end());
  std::vector<Var> free;
  for (Var y : outputs)
    if (!fixed.count(y)) free.push_back(y);
  int n = cfg.count > 0 ? cfg.count : default_sample_count(free.size());
  int warm = std::min(cfg.warmup, n);

  std::vector<Var> cols(inputs.begin(), inputs.end());
  cols.insert(cols.end(), outputs.begin(), outputs.end());
  SampleMatrix m(cols);

  std::vector<double> bias(static_cast<std::size_t>(work.numVars) + 1, 0.5);
  for (const Assignment& a : sat::sample(work, bias, warm, cfg.seed)) m.add_row(a);
  if (n == warm) return m;

  for (Var y : free) {
    auto col = m.column(y);
    double q = static_cast<double>(std::count(col.begin(), col.end(), 1)) / std::max(1, m.rows());
    bias[static_cast<std::size_t>(y)] = q >= 0.8 ? 0.9 : q <= 0.2 ? 0.1 : 0.5;
  }
  for (const Assignment& a : sat::sample(work, bias, n - warm, cfg.seed ^ 0x9E3779B97F4A7C15ull)) m.add_row(a);
  return m;
}

}  // namespace skolem::learn
