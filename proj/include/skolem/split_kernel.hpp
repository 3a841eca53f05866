#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace skolem::learn {

struct Split {
  int feature = -1;        // index into the feature list, -1 if no split separates the rows
  double decrease = 0.0;   // weighted Gini decrease, scaled by node share of all rows
};

/// Best binary split of the rows `rows` over 0/1 feature columns. cls[r] is
/// the class id (0..numClasses-1) of row r; totalRows scales the decrease as
/// node_rows/total * (gini - weighted child gini). Ties go to the lowest
/// feature index; features that leave one side empty are skipped.
Split best_split_serial(std::span<const std::span<const std::uint8_t>> features, std::span<const int> rows,
                        std::span<const int> cls, int numClasses, int totalRows);

// Same result as the serial kernel; features are scored in parallel.
Split best_split_parallel(std::span<const std::span<const std::uint8_t>> features, std::span<const int> rows,
                          std::span<const int> cls, int numClasses, int totalRows);

double gini(std::span<const int> counts, int n);

}  // namespace skolem::learn
