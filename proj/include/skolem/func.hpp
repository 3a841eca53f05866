#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "skolem/formula.hpp"

namespace skolem {

/// Handle to a node of a FuncStore, with a complement bit (AIG edge).
/// Not(Not(f)) is f by construction.
class Func {
 public:
  constexpr Func() = default;
  static constexpr Func from_raw(std::uint32_t raw) { return Func(raw); }

  constexpr std::uint32_t raw() const { return raw_; }
  constexpr std::uint32_t node() const { return raw_ >> 1; }
  constexpr bool negated() const { return (raw_ & 1u) != 0; }
  constexpr Func operator!() const { return Func(raw_ ^ 1u); }
  constexpr Func regular() const { return Func(raw_ & ~1u); }
  constexpr Func operator^(bool neg) const { return Func(raw_ ^ (neg ? 1u : 0u)); }

  friend constexpr auto operator<=>(Func, Func) = default;

 private:
  constexpr explicit Func(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_ = 0;  // node 0 is constant false
};

enum class NodeKind : std::uint8_t { Const, Var, And };

using VarNamer = std::function<std::string(Var)>;

/// Hash-consed AND/NOT DAG. Append-only; nodes are never freed. Structurally
/// identical nodes share identity, AND children are ordered canonically and
/// trivial cases (constants, a&a, a&!a) are folded on construction.
class FuncStore {
 public:
  FuncStore();

  static constexpr Func kFalse = Func::from_raw(0);
  static constexpr Func kTrue = Func::from_raw(1);

  Func constant(bool b) const { return b ? kTrue : kFalse; }
  Func var(Var v);
  Func lit(Lit l) { return l > 0 ? var(l) : !var(-l); }
  Func land(Func a, Func b);
  Func lor(Func a, Func b) { return !land(!a, !b); }
  Func lxor(Func a, Func b);
  Func ite(Func c, Func t, Func e) { return lor(land(c, t), land(!c, e)); }
  Func and_all(std::span<const Func> fs);
  Func or_all(std::span<const Func> fs);
  // Disjunction of literals.
  Func clause(const Clause& c);
  // Conjunction of clauses.
  Func cnf(std::span<const Clause> clauses);

  NodeKind kind(Func f) const { return nodes_[f.node()].kind; }
  bool is_const(Func f) const { return f.node() == 0; }
  Var var_id(Func f) const { return nodes_[f.node()].var; }
  Func left(Func f) const { return nodes_[f.node()].left; }
  Func right(Func f) const { return nodes_[f.node()].right; }

  bool eval(Func f, const Assignment& a) const;
  // Variables reachable from f, ascending.
  std::vector<Var> support(Func f) const;
  // Replaces Var leaves by the mapped functions. Unmapped leaves stay.
  Func substitute(Func f, const std::unordered_map<Var, Func>& map);
  Func cofactor(Func f, Var v, bool b);
  // Same structure with every Var leaf renamed (unmapped leaves stay).
  Func rename(Func f, const std::unordered_map<Var, Var>& map);

  std::size_t size() const { return nodes_.size(); }
  // Number of AND nodes reachable from the given roots.
  std::size_t and_count(std::span<const Func> roots) const;
  // Node count of f expanded as a tree (saturating).
  std::uint64_t tree_size(Func f) const;

  // Prefix dump, e.g. "and(not(x1), y3)". Children print sorted by their text.
  std::string to_prefix(Func f, const VarNamer& name = {}) const;

  // Nodes reachable from the roots in topological (children first) order.
  std::vector<std::uint32_t> topo_order(std::span<const Func> roots) const;

 private:
  struct Node {
    NodeKind kind;
    Var var = 0;
    Func left, right;
  };
  struct PairHash {
    std::size_t operator()(std::uint64_t k) const { return std::hash<std::uint64_t>{}(k * 0x9E3779B97F4A7C15ull); }
  };

  Func map_leaves(Func f, const std::function<Func(Var)>& leaf);

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t, PairHash> andTable_;
  std::unordered_map<Var, std::uint32_t> varTable_;
};

}  // namespace skolem

template <>
struct std::hash<skolem::Func> {
  std::size_t operator()(skolem::Func f) const noexcept { return std::hash<std::uint32_t>{}(f.raw()); }
};
