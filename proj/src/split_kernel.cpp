#include "skolem/split_kernel.hpp"

#include <omp.h>

namespace skolem::learn {

double gini(std::span<const int> counts, int n) {
  if (n == 0) return 0.0;
  double s = 0.0;
  for (int c : counts) {
    double p = static_cast<double>(c) / n;
    s += p * p;
  }
  return 1.0 - s;
}

namespace {

// Score of one feature; -1 when the split is degenerate.
double score(std::span<const std::uint8_t> col, std::span<const int> rows, std::span<const int> cls, int numClasses,
             double parentGini, double weight, std::vector<int>& counts) {
  counts.assign(2 * static_cast<std::size_t>(numClasses), 0);
  int n1 = 0;
  for (int r : rows) {
    int side = col[static_cast<std::size_t>(r)];
    n1 += side;
    ++counts[static_cast<std::size_t>(side * numClasses + cls[static_cast<std::size_t>(r)])];
  }
  int n = static_cast<int>(rows.size()), n0 = n - n1;
  if (n0 == 0 || n1 == 0) return -1.0;
  std::span<const int> c(counts);
  double g0 = gini(c.first(static_cast<std::size_t>(numClasses)), n0);
  double g1 = gini(c.subspan(static_cast<std::size_t>(numClasses)), n1);
  double d = weight * (parentGini - (static_cast<double>(n0) / n) * g0 - (static_cast<double>(n1) / n) * g1);
  return d < 0.0 ? 0.0 : d;  // rounding only; Gini never increases on a split
}

double parent_gini(std::span<const int> rows, std::span<const int> cls, int numClasses) {
  std::vector<int> counts(static_cast<std::size_t>(numClasses), 0);
  for (int r : rows) ++counts[static_cast<std::size_t>(cls[static_cast<std::size_t>(r)])];
  return gini(counts, static_cast<int>(rows.size()));
}

Split pick(const std::vector<double>& scores) {
  Split best;
  for (std::size_t f = 0; f < scores.size(); ++f)
    if (scores[f] >= 0.0 && (best.feature < 0 || scores[f] > best.decrease + 1e-12)) {
      best.feature = static_cast<int>(f);
      best.decrease = scores[f];
    }
  return best;
}

}  // namespace

Split best_split_serial(std::span<const std::span<const std::uint8_t>> features, std::span<const int> rows,
                        std::span<const int> cls, int numClasses, int totalRows) {
  double pg = parent_gini(rows, cls, numClasses);
  double weight = static_cast<double>(rows.size()) / totalRows;
  std::vector<double> scores(features.size());
  std::vector<int> counts;
  for (std::size_t f = 0; f < features.size(); ++f)
    scores[f] = score(features[f], rows, cls, numClasses, pg, weight, counts);
  return pick(scores);
}

Split best_split_parallel(std::span<const std::span<const std::uint8_t>> features, std::span<const int> rows,
                          std::span<const int> cls, int numClasses, int totalRows) {
  double pg = parent_gini(rows, cls, numClasses);
  double weight = static_cast<double>(rows.size()) / totalRows;
  std::vector<double> scores(features.size());
  const long nf = static_cast<long>(features.size());
#pragma omp parallel
  {
    std::vector<int> counts;
#pragma omp for schedule(static)
    for (long f = 0; f < nf; ++f)
      scores[static_cast<std::size_t>(f)] =
          score(features[static_cast<std::size_t>(f)], rows, cls, numClasses, pg, weight, counts);
  }
  // Serial reduction keeps the tie-break identical to the reference kernel.
  return pick(scores);
}

}  // namespace skolem::learn
