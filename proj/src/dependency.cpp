#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "skolem/learner.hpp"

namespace skolem::learn {

std::vector<Var> closure(const DependsOn& dep, Var from) {
  std::vector<Var> out, stack{from};
  std::unordered_set<Var> seen;
  while (!stack.empty()) {
    Var v = stack.back();
    stack.pop_back();
    auto it = dep.find(v);
    if (it == dep.end()) continue;
    for (Var w : it->second)
      if (seen.insert(w).second) {
        out.push_back(w);
        stack.push_back(w);
      }
  }
  return out;
}

std::vector<Var> find_order(std::span<const Var> outputs, const DependsOn& dep) {
  std::unordered_map<Var, int> pos, indeg;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    pos[outputs[i]] = static_cast<int>(i);
    indeg[outputs[i]] = 0;
  }
  for (Var y : outputs) {
    auto it = dep.find(y);
    if (it == dep.end()) continue;
    std::unordered_set<Var> targets(it->second.begin(), it->second.end());
    for (Var w : targets)
      if (pos.count(w)) ++indeg[w];
  }
  // Max-heap on declared position: the last declared ready output goes first.
  std::priority_queue<int> ready;
  for (Var y : outputs)
    if (indeg[y] == 0) ready.push(pos[y]);
  std::vector<Var> order;
  while (!ready.empty()) {
    Var y = outputs[static_cast<std::size_t>(ready.top())];
    ready.pop();
    order.push_back(y);
    auto it = dep.find(y);
    if (it == dep.end()) continue;
    std::unordered_set<Var> targets(it->second.begin(), it->second.end());
    for (Var w : targets)
      if (pos.count(w) && --indeg[w] == 0) ready.push(pos[w]);
  }
  if (order.size() != outputs.size()) throw InternalError("find_order: cyclic dependencies among outputs");
  return order;
}

}  // namespace skolem::learn
