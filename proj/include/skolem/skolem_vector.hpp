#pragma once

#include <string_view>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"

namespace skolem {

enum class SkolemStatus { Empty, UnatePos, UnateNeg, Unique, Learned, Repaired, SelfSubstituted };

std::string_view to_string(SkolemStatus s);

/// One candidate function per output, in the spec's output order.
struct SkolemVector {
  std::vector<Var> outputs;
  std::vector<Func> funcs;
  std::vector<SkolemStatus> status;

  SkolemVector() = default;
  explicit SkolemVector(std::vector<Var> ys)
      : outputs(std::move(ys)), funcs(outputs.size(), FuncStore::kFalse), status(outputs.size(), SkolemStatus::Empty) {}

  std::size_t size() const { return outputs.size(); }
  int index_of(Var y) const;
  Func& func(Var y) { return funcs[static_cast<std::size_t>(index_of(y))]; }
  Func func(Var y) const { return funcs[static_cast<std::size_t>(index_of(y))]; }
  SkolemStatus& state(Var y) { return status[static_cast<std::size_t>(index_of(y))]; }
  SkolemStatus state(Var y) const { return status[static_cast<std::size_t>(index_of(y))]; }
};

/// Substitutes output leaves so every function depends on inputs only.
/// `order` lists outputs such that a function may mention only outputs placed
/// after its own variable; functions are grounded from the back of the order.
/// Throws InternalError naming the offending pair if that does not hold.
SkolemVector ground(FuncStore& store, const SkolemVector& psi, const std::vector<Var>& order);

// Evaluates a (possibly ungrounded) vector at an input assignment: outputs are
// computed from the back of `order` and written into the returned assignment.
Assignment evaluate_vector(const FuncStore& store, const SkolemVector& psi, const std::vector<Var>& order,
                           const Assignment& inputs);

}  // namespace skolem
