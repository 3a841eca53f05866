#include "skolem/skolem_vector.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace skolem {

std::string_view to_string(SkolemStatus s) {
  switch (s) {
    case SkolemStatus::Empty: return "empty";
    case SkolemStatus::UnatePos: return "unate-pos";
    case SkolemStatus::UnateNeg: return "unate-neg";
    case SkolemStatus::Unique: return "unique";
    case SkolemStatus::Learned: return "learned";
    case SkolemStatus::Repaired: return "repaired";
    case SkolemStatus::SelfSubstituted: return "self-substituted";
  }
  return "?";
}

int SkolemVector::index_of(Var y) const {
  auto it = std::find(outputs.begin(), outputs.end(), y);
  if (it == outputs.end()) throw InternalError("variable " + std::to_string(y) + " is not an output");
  return static_cast<int>(it - outputs.begin());
}

SkolemVector ground(FuncStore& store, const SkolemVector& psi, const std::vector<Var>& order) {
  std::unordered_map<Var, Func> grounded;
  SkolemVector out = psi;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Var y = *it;
    Func f = psi.func(y);
    std::unordered_map<Var, Func> sub;
    for (Var v : store.support(f)) {
      if (std::find(psi.outputs.begin(), psi.outputs.end(), v) == psi.outputs.end()) continue;
      auto g = grounded.find(v);
      if (g == grounded.end())
        throw InternalError("cyclic dependency: y" + std::to_string(y) + " mentions y" + std::to_string(v) +
                            " which is not later in the order");
      sub.emplace(v, g->second);
    }
    Func h = store.substitute(f, sub);
    grounded.emplace(y, h);
    out.func(y) = h;
  }
  return out;
}

Assignment evaluate_vector(const FuncStore& store, const SkolemVector& psi, const std::vector<Var>& order,
                           const Assignment& inputs) {
  Assignment a = inputs;
  for (auto it = order.rbegin(); it != order.rend(); ++it) a.set(*it, store.eval(psi.func(*it), a));
  return a;
}

}  // namespace skolem
