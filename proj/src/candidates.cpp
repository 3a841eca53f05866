#include <algorithm>
#include <unordered_set>

#include "skolem/learner.hpp"

namespace skolem::learn {

DecisionTree candidate_skf(FuncStore& store, const SampleMatrix& data, std::span<const Var> inputs,
                           std::span<const Var> outputs, std::span<const Var> chunk, DependsOn& dep,
                           SkolemVector& psi, const TreeParams& params) {
  std::unordered_set<Var> inChunk(chunk.begin(), chunk.end());
  std::vector<Var> features(inputs.begin(), inputs.end());
  for (Var y : outputs) {
    if (inChunk.count(y)) continue;
    // Excluded if y already (transitively) depends on a chunk variable.
    std::vector<Var> reach = closure(dep, y);
    if (std::none_of(reach.begin(), reach.end(), [&](Var v) { return inChunk.count(v) != 0; })) features.push_back(y);
  }
  std::sort(features.begin(), features.end());

  DecisionTree tree = create_decision_tree(data, features, chunk, params);
  for (std::size_t j = 0; j < chunk.size(); ++j) {
    Var y = chunk[j];
    Func f = tree_function(store, tree, j);
    psi.func(y) = f;
    psi.state(y) = SkolemStatus::Learned;
    std::vector<Var>& d = dep[y];
    d.clear();
    for (Var v : store.support(f))
      if (std::find(outputs.begin(), outputs.end(), v) != outputs.end()) d.push_back(v);
  }
  for (Var y : chunk)
    for (Var v : dep[y]) {
      std::vector<Var> reach = closure(dep, v);
      if (v == y || std::find(reach.begin(), reach.end(), y) != reach.end())
        throw InternalError("candidate_skf: learned candidate creates a dependency cycle");
    }
  return tree;
}

}  // namespace skolem::learn
