#include <stdexcept>
#include <unordered_map>

#include "skolem/encode.hpp"
#include "skolem/engine.hpp"
#include "skolem/sat.hpp"

namespace skolem {

CheckResult check_vector(const Spec& spec, const FuncStore& store, const std::vector<Func>& psi,
                         std::optional<std::chrono::steady_clock::time_point> deadline) {
  if (psi.size() != spec.outputs.size()) throw std::invalid_argument("vector size differs from the output count");
  for (Func f : psi)
    for (Var v : store.support(f))
      if (!spec.is_input(v)) throw std::invalid_argument("vector function reads a non-input variable");

  // F(X,Y) and not F(X,Y') and Y' = psi(X).
  Cnf e = spec.cnf;
  std::unordered_map<Var, Var> primed;
  for (Var y : spec.outputs) primed[y] = e.fresh();
  Cnf copy = rename_vars(spec.cnf, primed);
  e.add({negate_cnf(copy.clauses, e)});
  TseitinEncoder enc(store, e);
  for (std::size_t i = 0; i < psi.size(); ++i) add_equiv(e, primed[spec.outputs[i]], enc.encode(psi[i]));

  sat::Options opts;
  opts.deadline = deadline;
  switch (sat::solve(e, {}, opts).status) {
    case sat::Status::Unsat: return CheckResult::Valid;
    case sat::Status::Sat: return CheckResult::Invalid;
    default: return CheckResult::Unknown;
  }
}

}  // namespace skolem
