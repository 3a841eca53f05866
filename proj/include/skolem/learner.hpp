#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"
#include "skolem/skolem_vector.hpp"

namespace skolem::learn {

/// Models of the working formula restricted to X and Y, stored by column.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  explicit SampleMatrix(std::vector<Var> columns);

  const std::vector<Var>& columns() const { return columns_; }
  int rows() const { return rows_; }
  bool has(Var v) const { return index_.count(v) != 0; }
  std::span<const std::uint8_t> column(Var v) const { return data_[index_.at(v)]; }
  bool value(int row, Var v) const { return data_[index_.at(v)][static_cast<std::size_t>(row)] != 0; }

  void add_row(const Assignment& a);
  void write_csv(std::ostream& out) const;

 private:
  std::vector<Var> columns_;
  std::unordered_map<Var, std::size_t> index_;
  std::vector<std::vector<std::uint8_t>> data_;
  int rows_ = 0;
};

struct SampleConfig {
  int count = 0;  // 0: clamp(50 * |Y \ U|, 1000, 10000)
  int warmup = 500;
  std::uint64_t seed = 0;
};

int default_sample_count(std::size_t freeOutputs);

/// Two-phase sampling: warmup rows at bias 0.5, then each free output biased
/// towards its observed majority (0.9 / 0.1 when its frequency of ones is at
/// least 0.8 / at most 0.2). Throws sat::SamplingError if `work` has no model.
SampleMatrix get_samples(const Cnf& work, std::span<const Var> inputs, std::span<const Var> outputs,
                         std::span<const Var> determined, const SampleConfig& cfg);

enum class ClusterMode { Graph, Random };

/// Chunks of the outputs not in U, each of size at most s. Graph mode walks
/// the outputs in declared order and takes k-hop neighbourhoods in the primal
/// graph of the clauses, shrinking k until the chunk fits. Random mode
/// shuffles and slices.
std::vector<std::vector<Var>> cluster_y(const Cnf& f, std::span<const Var> outputs, std::span<const Var> determined,
                                        int k, int s, ClusterMode mode = ClusterMode::Graph, std::uint64_t seed = 0);

struct TreeParams {
  double minImpurityDecrease = 0.005;
  bool parallel = false;  // OpenMP split search
};

struct DecisionTree {
  struct Node {
    int feature = -1;     // index into features; -1 for a leaf
    int child[2] = {-1, -1};
    std::uint64_t label = 0;  // leaves: bit (L-1-j) is labels[j]
    int rows = 0;
  };
  std::vector<Var> features;
  std::vector<Var> labels;
  std::vector<Node> nodes;  // nodes[0] is the root

  bool label_bit(const Node& n, std::size_t j) const { return (n.label >> (labels.size() - 1 - j)) & 1u; }
  const Node& classify(const Assignment& a) const;
  int depth() const;
  std::string to_dot() const;
};

/// CART induction over Gini impurity. Classes are the distinct label
/// vectors; a node splits on the feature with the largest weighted impurity
/// decrease (lowest variable id on ties) unless it is pure or the decrease
/// is below the threshold. Leaves take the majority class, ties to the
/// lexicographically smallest label vector. At most 64 labels.
DecisionTree create_decision_tree(const SampleMatrix& data, std::span<const Var> features,
                                  std::span<const Var> labels, const TreeParams& params = {});

// psi for labels[j]: disjunction of the paths to leaves whose bit j is 1.
Func tree_function(FuncStore& store, const DecisionTree& tree, std::size_t j);

using DependsOn = std::unordered_map<Var, std::vector<Var>>;

// Outputs reachable from `from` through dependson (excluding `from` unless on a cycle).
std::vector<Var> closure(const DependsOn& dep, Var from);

/// Learns one chunk: features are X plus every output outside the chunk that
/// cannot reach a chunk variable through dependson. Writes psi and status
/// Learned for each chunk variable and records its output dependencies.
DecisionTree candidate_skf(FuncStore& store, const SampleMatrix& data, std::span<const Var> inputs,
                           std::span<const Var> outputs, std::span<const Var> chunk, DependsOn& dep,
                           SkolemVector& psi, const TreeParams& params = {});

/// Linear order of outputs with y before every output in the closure of
/// dependson[y]. Among ready outputs the one declared last goes first.
/// Throws InternalError on a cycle.
std::vector<Var> find_order(std::span<const Var> outputs, const DependsOn& dep);

}  // namespace skolem::learn
