#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skolem {

// Variables are 1-based DIMACS ids; literals are signed ids.
using Var = std::int32_t;
using Lit = std::int32_t;
using Clause = std::vector<Lit>;

inline Var var_of(Lit l) { return l < 0 ? -l : l; }

// Sorts by variable then sign, drops duplicates. Returns false if the clause
// is a tautology (contains l and -l).
bool normalize_clause(Clause& c);

struct Cnf {
  int numVars = 0;
  std::vector<Clause> clauses;

  Var fresh() { return ++numVars; }
  void add(Clause c) { clauses.push_back(std::move(c)); }
  void append(const Cnf& other);
  bool has_empty_clause() const;
};

/// A 2QBF specification forall X exists Y. F(X, Y). Variables above the
/// quantified range are auxiliaries introduced by encodings.
struct Spec {
  Cnf cnf;
  std::vector<Var> inputs;   // X, in declared order
  std::vector<Var> outputs;  // Y, in declared order

  int num_vars() const { return cnf.numVars; }
  const std::vector<Clause>& clauses() const { return cnf.clauses; }
  bool is_input(Var v) const;
  bool is_output(Var v) const;
  // Position of v in outputs, or -1.
  int output_index(Var v) const;
};

/// Partial assignment indexed by variable id. Values: 0, 1, or unassigned.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int numVars) : vals_(static_cast<std::size_t>(numVars) + 1, kUnset) {}

  int size() const { return static_cast<int>(vals_.size()) - 1; }
  bool assigned(Var v) const { return v < static_cast<int>(vals_.size()) && vals_[v] != kUnset; }
  bool operator[](Var v) const { return vals_[v] == 1; }
  void set(Var v, bool b) {
    if (v >= static_cast<int>(vals_.size())) vals_.resize(static_cast<std::size_t>(v) + 1, kUnset);
    vals_[v] = b ? 1 : 0;
  }
  void unset(Var v) { vals_[v] = kUnset; }
  // Literal truth under the assignment; unassigned literals are false.
  bool holds(Lit l) const {
    Var v = var_of(l);
    return assigned(v) && ((*this)[v] == (l > 0));
  }
  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  static constexpr signed char kUnset = -1;
  std::vector<signed char> vals_;
};

bool satisfies(const Assignment& a, const Clause& c);
bool satisfies(const Assignment& a, std::span<const Clause> clauses);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails (cyclic dependencies, an
// interpolant that does not verify, ...). Never recovered from.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace skolem
