#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "skolem/learner.hpp"
#include "skolem/split_kernel.hpp"

namespace skolem::learn {

const DecisionTree::Node& DecisionTree::classify(const Assignment& a) const {
  const Node* n = &nodes[0];
  while (n->feature >= 0) n = &nodes[static_cast<std::size_t>(n->child[a.holds(features[static_cast<std::size_t>(n->feature)])])];
  return *n;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    for (int c : nodes[i].child)
      if (c >= 0) d[static_cast<std::size_t>(c)] = d[i] + 1;
  }
  return best;
}

std::string DecisionTree::to_dot() const {
  std::ostringstream out;
  out << "digraph tree {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.feature >= 0) {
      out << "  n" << i << " [label=\"v" << features[static_cast<std::size_t>(n.feature)] << "\"];\n";
      out << "  n" << i << " -> n" << n.child[0] << " [label=\"0\"];\n";
      out << "  n" << i << " -> n" << n.child[1] << " [label=\"1\"];\n";
    } else {
      std::string bits;
      for (std::size_t j = 0; j < labels.size(); ++j) bits += label_bit(n, j) ? '1' : '0';
      out << "  n" << i << " [shape=box,label=\"" << bits << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

DecisionTree create_decision_tree(const SampleMatrix& data, std::span<const Var> features,
                                  std::span<const Var> labels, const TreeParams& params) {
  if (labels.empty() || labels.size() > 64) throw std::invalid_argument("decision tree: 1 to 64 labels required");
  DecisionTree t;
  t.features.assign(features.begin(), features.end());
  t.labels.assign(labels.begin(), labels.end());
  const int n = data.rows();

  // Class ids in ascending label order, so a smaller id is the
  // lexicographically smaller label vector.
  std::vector<std::uint64_t> key(static_cast<std::size_t>(n), 0);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    auto col = data.column(labels[j]);
    for (int r = 0; r < n; ++r)
      if (col[static_cast<std::size_t>(r)]) key[static_cast<std::size_t>(r)] |= 1ull << (labels.size() - 1 - j);
  }
  std::map<std::uint64_t, int> classOf;
  for (std::uint64_t k : key) classOf[k];
  std::vector<std::uint64_t> classKey;
  for (auto& [k, id] : classOf) {
    id = static_cast<int>(classKey.size());
    classKey.push_back(k);
  }
  const int numClasses = static_cast<int>(classKey.size());
  std::vector<int> cls(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) cls[static_cast<std::size_t>(r)] = classOf[key[static_cast<std::size_t>(r)]];

  std::vector<std::span<const std::uint8_t>> cols;
  for (Var f : features) cols.push_back(data.column(f));

  struct Work {
    int node;
    std::vector<int> rows;
  };
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) all[static_cast<std::size_t>(r)] = r;
  t.nodes.emplace_back();
  std::vector<Work> stack;
  stack.push_back({0, std::move(all)});
  std::vector<int> counts;
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    counts.assign(static_cast<std::size_t>(std::max(numClasses, 1)), 0);
    for (int r : w.rows) ++counts[static_cast<std::size_t>(cls[static_cast<std::size_t>(r)])];
    int major = 0;
    for (int c = 1; c < numClasses; ++c)
      if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(major)]) major = c;
    auto& node = t.nodes[static_cast<std::size_t>(w.node)];
    node.label = numClasses ? classKey[static_cast<std::size_t>(major)] : 0;
    node.rows = static_cast<int>(w.rows.size());
    if (numClasses == 0 || counts[static_cast<std::size_t>(major)] == static_cast<int>(w.rows.size())) continue;

    Split sp = params.parallel ? best_split_parallel(cols, w.rows, cls, numClasses, n)
                               : best_split_serial(cols, w.rows, cls, numClasses, n);
    if (sp.feature < 0 || sp.decrease + 1e-12 < params.minImpurityDecrease) continue;

    std::vector<int> side[2];
    auto col = cols[static_cast<std::size_t>(sp.feature)];
    for (int r : w.rows) side[col[static_cast<std::size_t>(r)]].push_back(r);
    int kids[2];
    for (int b = 0; b < 2; ++b) {
      kids[b] = static_cast<int>(t.nodes.size());
      t.nodes.emplace_back();
    }
    auto& parent = t.nodes[static_cast<std::size_t>(w.node)];
    parent.feature = sp.feature;
    parent.child[0] = kids[0];
    parent.child[1] = kids[1];
    stack.push_back({kids[1], std::move(side[1])});
    stack.push_back({kids[0], std::move(side[0])});
  }
  return t;
}

Func tree_function(FuncStore& store, const DecisionTree& tree, std::size_t j) {
  std::vector<Func> memo(tree.nodes.size());
  // Children always have larger indices than their parent.
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const auto& n = tree.nodes[i];
    if (n.feature < 0) {
      memo[i] = store.constant(tree.label_bit(n, j));
    } else {
      Func v = store.var(tree.features[static_cast<std::size_t>(n.feature)]);
      memo[i] = store.ite(v, memo[static_cast<std::size_t>(n.child[1])], memo[static_cast<std::size_t>(n.child[0])]);
    }
  }
  return memo[0];
}

}  // namespace skolem::learn
