#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/formula.hpp"
#include "skolem/func.hpp"
#include "skolem/skolem_vector.hpp"

namespace skolem {

/// Reads a 2QBF in QDIMACS. Universal and free variables become inputs,
/// existential variables outputs. Tautologies and duplicate literals are
/// dropped. Throws ParseError on malformed input, a non-2QBF prefix (an `e`
/// block before an `a` block, or more than two alternations) or an empty
/// clause.
Spec parse_qdimacs(std::istream& in);
Spec parse_qdimacs(std::string_view text);
Spec read_qdimacs_file(const std::string& path);

void write_qdimacs(std::ostream& out, const Spec& spec);
std::string to_qdimacs(const Spec& spec);

/// ASCII AIGER (aag 1.9 subset, combinational). Inputs are `inputs` in order,
/// outputs are psi's functions in output order; every function must depend on
/// inputs only. A symbol table names inputs and outputs by variable id.
std::string write_aag(const FuncStore& store, const SkolemVector& psi, const std::vector<Var>& inputs);

struct AagCircuit {
  std::vector<Func> outputs;           // over the given input variables
  std::vector<std::string> outputNames;
};

// Maps the file's i-th input to inputs[i]. Throws ParseError on malformed
// files, latches, or an input count mismatch.
AagCircuit read_aag(std::string_view text, FuncStore& store, const std::vector<Var>& inputs);

}  // namespace skolem
