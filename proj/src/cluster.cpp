#include <algorithm>
#include <cassert>
#include <deque>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "skolem/learner.hpp"

namespace skolem::learn {

namespace {

using Graph = std::unordered_map<Var, std::set<Var>>;

// Closed k-hop neighbourhood of y among the vertices still in g.
std::set<Var> k_hop(const Graph& g, Var y, int k) {
  std::set<Var> seen{y};
  std::deque<std::pair<Var, int>> queue{{y, 0}};
  while (!queue.empty()) {
    auto [v, d] = queue.front();
    queue.pop_front();
    if (d == k) continue;
    for (Var w : g.at(v))
      if (seen.insert(w).second) queue.push_back({w, d + 1});
  }
  return seen;
}

}  // namespace

std::vector<std::vector<Var>> cluster_y(const Cnf& f, std::span<const Var> outputs, std::span<const Var> determined,
                                        int k, int s, ClusterMode mode, std::uint64_t seed) {
  std::unordered_set<Var> fixed(determined.begin(), determined.end());
  std::vector<Var> free;
  for (Var y : outputs)
    if (!fixed.count(y)) free.push_back(y);
  std::vector<std::vector<Var>> chunks;

  if (mode == ClusterMode::Random) {
    std::mt19937_64 rng(seed);
    std::shuffle(free.begin(), free.end(), rng);
    for (std::size_t i = 0; i < free.size(); i += static_cast<std::size_t>(s)) {
      std::vector<Var> c(free.begin() + static_cast<long>(i),
                         free.begin() + static_cast<long>(std::min(free.size(), i + static_cast<std::size_t>(s))));
      std::sort(c.begin(), c.end());
      chunks.push_back(std::move(c));
    }
    return chunks;
  }

  Graph g;
  for (Var y : free) g[y];
  for (const Clause& c : f.clauses) {
    std::vector<Var> ys;
    for (Lit l : c)
      if (g.count(var_of(l))) ys.push_back(var_of(l));
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t j = i + 1; j < ys.size(); ++j)
        if (ys[i] != ys[j]) {
          g[ys[i]].insert(ys[j]);
          g[ys[j]].insert(ys[i]);
        }
  }

  std::unordered_map<Var, std::size_t> pos;
  for (std::size_t i = 0; i < outputs.size(); ++i) pos[outputs[i]] = i;
  for (Var y : free) {
    if (!g.count(y)) continue;
    int kk = k;
    std::set<Var> chunk = k_hop(g, y, kk);
    while (static_cast<int>(chunk.size()) > s) chunk = k_hop(g, y, --kk);
    assert(kk >= 0);
    std::vector<Var> c(chunk.begin(), chunk.end());
    std::sort(c.begin(), c.end(), [&](Var a, Var b) { return pos[a] < pos[b]; });
    for (Var v : c) {
      for (Var w : g[v]) g[w].erase(v);
      g.erase(v);
    }
    chunks.push_back(std::move(c));
  }
  return chunks;
}

}  // namespace skolem::learn
