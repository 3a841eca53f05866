#include "skolem/func.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace skolem {

FuncStore::FuncStore() { nodes_.push_back(Node{NodeKind::Const, 0, {}, {}}); }

Func FuncStore::var(Var v) {
  auto [it, inserted] = varTable_.try_emplace(v, static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(Node{NodeKind::Var, v, {}, {}});
  return Func::from_raw(it->second << 1);
}

Func FuncStore::land(Func a, Func b) {
  if (a == kFalse || b == kFalse) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue) return a;
  if (a == b) return a;
  if (a == !b) return kFalse;
  if (b < a) std::swap(a, b);
  std::uint64_t key = (static_cast<std::uint64_t>(a.raw()) << 32) | b.raw();
  auto [it, inserted] = andTable_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) nodes_.push_back(Node{NodeKind::And, 0, a, b});
  return Func::from_raw(it->second << 1);
}

Func FuncStore::lxor(Func a, Func b) {
  if (is_const(a)) return a == kTrue ? !b : b;
  if (is_const(b)) return b == kTrue ? !a : a;
  return lor(land(a, !b), land(!a, b));
}

Func FuncStore::and_all(std::span<const Func> fs) {
  Func acc = kTrue;
  for (Func f : fs) acc = land(acc, f);
  return acc;
}

Func FuncStore::or_all(std::span<const Func> fs) {
  Func acc = kFalse;
  for (Func f : fs) acc = lor(acc, f);
  return acc;
}

Func FuncStore::clause(const Clause& c) {
  Func acc = kFalse;
  for (Lit l : c) acc = lor(acc, lit(l));
  return acc;
}

Func FuncStore::cnf(std::span<const Clause> clauses) {
  Func acc = kTrue;
  for (const Clause& c : clauses) {
    acc = land(acc, clause(c));
    if (acc == kFalse) break;
  }
  return acc;
}

std::vector<std::uint32_t> FuncStore::topo_order(std::span<const Func> roots) const {
  std::vector<std::uint32_t> order;
  std::vector<char> state(nodes_.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<std::uint32_t> stack;
  for (Func r : roots) {
    stack.push_back(r.node());
    while (!stack.empty()) {
      std::uint32_t n = stack.back();
      if (state[n] == 2) {
        stack.pop_back();
        continue;
      }
      const Node& node = nodes_[n];
      if (state[n] == 0 && node.kind == NodeKind::And) {
        state[n] = 1;
        if (state[node.left.node()] != 2) stack.push_back(node.left.node());
        if (state[node.right.node()] != 2) stack.push_back(node.right.node());
        continue;
      }
      state[n] = 2;
      order.push_back(n);
      stack.pop_back();
    }
  }
  return order;
}

bool FuncStore::eval(Func f, const Assignment& a) const {
  if (is_const(f)) return f == kTrue;
  if (kind(f) == NodeKind::Var) return a.holds(var_id(f)) != f.negated();
  std::unordered_map<std::uint32_t, bool> val;
  Func roots[] = {f};
  for (std::uint32_t n : topo_order(roots)) {
    const Node& node = nodes_[n];
    bool v = false;
    switch (node.kind) {
      case NodeKind::Const: v = false; break;
      case NodeKind::Var: v = a.holds(node.var); break;
      case NodeKind::And:
        v = (val[node.left.node()] != node.left.negated()) && (val[node.right.node()] != node.right.negated());
        break;
    }
    val[n] = v;
  }
  return val[f.node()] != f.negated();
}

std::vector<Var> FuncStore::support(Func f) const {
  std::vector<Var> out;
  Func roots[] = {f};
  for (std::uint32_t n : topo_order(roots))
    if (nodes_[n].kind == NodeKind::Var) out.push_back(nodes_[n].var);
  std::sort(out.begin(), out.end());
  return out;
}

Func FuncStore::map_leaves(Func f, const std::function<Func(Var)>& leaf) {
  Func roots[] = {f};
  std::vector<std::uint32_t> order = topo_order(roots);
  std::unordered_map<std::uint32_t, Func> image;
  image.reserve(order.size());
  for (std::uint32_t n : order) {
    // Copy: land() may grow nodes_.
    Node node = nodes_[n];
    Func out;
    switch (node.kind) {
      case NodeKind::Const: out = kFalse; break;
      case NodeKind::Var: out = leaf(node.var); break;
      case NodeKind::And:
        out = land(image.at(node.left.node()) ^ node.left.negated(),
                   image.at(node.right.node()) ^ node.right.negated());
        break;
    }
    image.emplace(n, out);
  }
  return image.at(f.node()) ^ f.negated();
}

Func FuncStore::substitute(Func f, const std::unordered_map<Var, Func>& map) {
  if (map.empty()) return f;
  return map_leaves(f, [&](Var v) {
    auto it = map.find(v);
    return it == map.end() ? var(v) : it->second;
  });
}

Func FuncStore::cofactor(Func f, Var v, bool b) {
  return substitute(f, {{v, constant(b)}});
}

Func FuncStore::rename(Func f, const std::unordered_map<Var, Var>& map) {
  if (map.empty()) return f;
  return map_leaves(f, [&](Var v) {
    auto it = map.find(v);
    return var(it == map.end() ? v : it->second);
  });
}

std::size_t FuncStore::and_count(std::span<const Func> roots) const {
  std::size_t n = 0;
  for (std::uint32_t id : topo_order(roots))
    if (nodes_[id].kind == NodeKind::And) ++n;
  return n;
}

std::uint64_t FuncStore::tree_size(Func f) const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max() / 4;
  Func roots[] = {f};
  std::unordered_map<std::uint32_t, std::uint64_t> sz;
  for (std::uint32_t n : topo_order(roots)) {
    const Node& node = nodes_[n];
    std::uint64_t s = 1;
    if (node.kind == NodeKind::And)
      s = std::min(kMax, 1 + sz[node.left.node()] + sz[node.right.node()]);
    sz[n] = s;
  }
  return sz[f.node()];
}

std::string FuncStore::to_prefix(Func f, const VarNamer& name) const {
  auto leafName = [&](Var v) { return name ? name(v) : "v" + std::to_string(v); };
  std::unordered_map<std::uint32_t, std::string> text;
  Func roots[] = {f};
  auto edge = [&](Func e) {
    if (is_const(e)) return std::string(e == kTrue ? "1" : "0");
    const std::string& s = text.at(e.node());
    return e.negated() ? "not(" + s + ")" : s;
  };
  for (std::uint32_t n : topo_order(roots)) {
    const Node& node = nodes_[n];
    if (node.kind == NodeKind::Var)
      text[n] = leafName(node.var);
    else if (node.kind == NodeKind::And) {
      // Children sorted by their text, so the dump does not depend on the
      // order in which nodes were created.
      std::string a = edge(node.left), b = edge(node.right);
      if (b < a) std::swap(a, b);
      text[n] = "and(" + a + ", " + b + ")";
    }
  }
  return edge(f);
}

}  // namespace skolem
