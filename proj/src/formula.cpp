#include "skolem/formula.hpp"

#include <algorithm>

namespace skolem {

bool normalize_clause(Clause& c) {
  std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
    return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
  });
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] == -c[i - 1]) return false;
  return true;
}

void Cnf::append(const Cnf& other) {
  numVars = std::max(numVars, other.numVars);
  clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
}

bool Cnf::has_empty_clause() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.empty(); });
}

bool Spec::is_input(Var v) const {
  return std::find(inputs.begin(), inputs.end(), v) != inputs.end();
}

bool Spec::is_output(Var v) const { return output_index(v) >= 0; }

int Spec::output_index(Var v) const {
  auto it = std::find(outputs.begin(), outputs.end(), v);
  return it == outputs.end() ? -1 : static_cast<int>(it - outputs.begin());
}

bool satisfies(const Assignment& a, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](Lit l) { return a.holds(l); });
}

bool satisfies(const Assignment& a, std::span<const Clause> clauses) {
  return std::all_of(clauses.begin(), clauses.end(),
                     [&](const Clause& c) { return satisfies(a, c); });
}

}  // namespace skolem
