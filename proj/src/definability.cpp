#include "skolem/definability.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "skolem/encode.hpp"

namespace skolem::def {

using sat::Solver;
using sat::Status;

std::string_view to_string(DefKind k) {
  switch (k) {
    case DefKind::UnatePos: return "unate-pos";
    case DefKind::UnateNeg: return "unate-neg";
    case DefKind::Unique: return "unique";
    case DefKind::Undefined: return "undefined";
    case DefKind::ExtractFailed: return "extract-failed";
  }
  return "?";
}

namespace {

// F|y=!b and not F|y=b. Clauses without y occur in both cofactors, so only
// the ones mentioning the falsified polarity need negating.
bool is_unate(const Cnf& work, Var y, bool b, const sat::Options& opts) {
  Cnf g = cofactor(work, y, !b);
  Lit lost = b ? -y : y;
  std::vector<Clause> weakened;
  for (const Clause& c : work.clauses) {
    if (std::find(c.begin(), c.end(), lost) == c.end()) continue;
    Clause d;
    for (Lit l : c)
      if (l != lost) d.push_back(l);
    weakened.push_back(std::move(d));
  }
  if (weakened.empty()) return true;
  g.numVars = std::max(g.numVars, work.numVars);
  Lit o = negate_cnf(weakened, g);
  g.add({o});
  return sat::solve(g, {}, opts).status == Status::Unsat;
}

}  // namespace

std::vector<Unate> find_unates(Cnf& work, std::span<const Var> outputs, const sat::Options& opts) {
  std::vector<Unate> out;
  for (Var y : outputs) {
    for (bool b : {true, false}) {
      if (!is_unate(work, y, b, opts)) continue;
      out.push_back({y, b});
      work.add({b ? y : -y});
      break;
    }
  }
  return out;
}

PadoaChecker::PadoaChecker(const Cnf& f, const Options& opts)
    : n_(f.numVars), corePasses_(opts.corePasses), solver_(opts.sat) {
  // W = 1..n, Z = n+1..2n, selector for variable v is 2n+v.
  solver_.ensure_vars(3 * n_);
  for (const Clause& c : f.clauses) {
    solver_.add_clause(c);
    Clause z;
    for (Lit l : c) z.push_back(l > 0 ? l + n_ : l - n_);
    solver_.add_clause(z);
  }
  for (Var v = 1; v <= n_; ++v) {
    Lit sel = 2 * n_ + v;
    solver_.add_clause({-sel, -v, v + n_});
    solver_.add_clause({-sel, v, -(v + n_)});
  }
}

Defined PadoaChecker::check(Var y, std::span<const Var> s) {
  std::vector<Lit> as;
  for (Var v : s)
    if (v != y) as.push_back(2 * n_ + v);
  as.push_back(y);
  as.push_back(-(y + n_));
  Defined d;
  d.status = solver_.solve(as);
  if (d.status != Status::Unsat) return d;
  std::vector<Lit> core = solver_.core();
  if (corePasses_ > 0) core = sat::minimize_core(solver_, core, corePasses_);
  for (Lit l : core)
    if (l > 2 * n_) d.core.push_back(l - 2 * n_);
  std::sort(d.core.begin(), d.core.end());
  return d;
}

Defined check_defined(const Cnf& f, Var y, std::span<const Var> s, const Options& opts) {
  PadoaChecker p(f, opts);
  return p.check(y, s);
}

bool entails_definition(const FuncStore& store, const Cnf& f, Var y, Func h) {
  for (bool b : {true, false}) {
    Cnf g = f;
    TseitinEncoder enc(store, g);
    Lit hl = enc.encode(h);
    // y=b together with h=!b must be impossible.
    g.add({b ? y : -y});
    g.add({b ? -hl : hl});
    if (sat::solve(g).status != Status::Unsat) return false;
  }
  return true;
}

std::optional<Func> define_by_enumeration(FuncStore& store, const Cnf& f, Var y, std::span<const Var> s, int limit) {
  if (static_cast<int>(s.size()) > limit) return std::nullopt;
  Solver solver;
  solver.ensure_vars(f.numVars);
  solver.add_cnf(f);
  std::vector<Var> vars(s.begin(), s.end());
  std::vector<Lit> as(vars.size() + 1);
  // Shannon expansion over vars; hash-consing shares equal subtrees.
  std::function<Func(std::size_t)> build = [&](std::size_t i) -> Func {
    if (i == vars.size()) {
      as[i] = y;
      bool one = solver.solve(as) == Status::Sat;
      as[i] = -y;
      bool zero = solver.solve(as) == Status::Sat;
      if (one && zero) throw NotDefined("output " + std::to_string(y) + " is not defined by the given set");
      return store.constant(one);
    }
    as[i] = vars[i];
    Func hi = build(i + 1);
    as[i] = -vars[i];
    Func lo = build(i + 1);
    return store.ite(store.var(vars[i]), hi, lo);
  };
  return build(0);
}

UniDefResult unidef(FuncStore& store, const Spec& spec, const Options& opts) {
  UniDefResult r;
  r.psi = SkolemVector(spec.outputs);
  r.base = spec.cnf;
  std::unordered_map<Var, bool> unate;
  std::vector<Unate> found;
  if (opts.unates) found = find_unates(r.base, spec.outputs, opts.sat);
  for (const Unate& u : found) {
    unate[u.y] = u.value;
    r.psi.func(u.y) = store.constant(u.value);
    r.psi.state(u.y) = u.value ? SkolemStatus::UnatePos : SkolemStatus::UnateNeg;
    r.determined.push_back(u.y);
    ++r.unates;
  }
  r.working = r.base;
  std::unordered_map<Var, DefRecord> rec;
  for (Var y : spec.outputs) {
    rec[y].y = y;
    if (unate.count(y)) rec[y].kind = unate[y] ? DefKind::UnatePos : DefKind::UnateNeg;
  }

  if (opts.extract) {
    PadoaChecker padoa(r.base, opts);
    std::vector<Var> defining(spec.inputs.begin(), spec.inputs.end());
    for (Var y : spec.outputs) {
      if (!unate.count(y)) {
        Defined d = padoa.check(y, defining);
        if (d.defined()) {
          rec[y].coreSize = d.core.size();
          std::optional<Func> h = extract_definition(store, r.base, y, d.core, opts);
          if (!h) {
            rec[y].kind = DefKind::ExtractFailed;
            ++r.extractFailures;
          } else {
            rec[y].kind = DefKind::Unique;
            r.psi.func(y) = *h;
            r.psi.state(y) = SkolemStatus::Unique;
            r.determined.push_back(y);
            ++r.unique;
            for (Var v : store.support(*h))
              if (spec.is_output(v)) r.dependson[y].push_back(v);
            // Retention: y <-> h joins the working formula.
            std::size_t before = r.working.clauses.size();
            TseitinEncoder enc(store, r.working);
            add_equiv(r.working, y, enc.encode(*h));
            rec[y].defClauses = r.working.clauses.size() - before;
          }
        }
      }
      defining.push_back(y);
    }
  }
  for (Var y : spec.outputs) r.report.push_back(rec[y]);
  return r;
}

}  // namespace skolem::def
