#include "skolem/encode.hpp"

#include <algorithm>

namespace skolem {

Cnf cofactor(const Cnf& f, Var v, bool b) {
  const Lit sat = b ? v : -v;
  Cnf out;
  out.numVars = f.numVars;
  out.clauses.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) {
    if (std::find(c.begin(), c.end(), sat) != c.end()) continue;
    Clause d;
    d.reserve(c.size());
    for (Lit l : c)
      if (l != -sat) d.push_back(l);
    out.clauses.push_back(std::move(d));
  }
  return out;
}

Spec cofactor(const Spec& f, Var v, bool b) {
  Spec out = f;
  out.cnf = cofactor(f.cnf, v, b);
  return out;
}

Cnf rename_vars(const Cnf& f, const std::unordered_map<Var, Var>& map) {
  Cnf out;
  out.numVars = f.numVars;
  out.clauses.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) {
    Clause d;
    d.reserve(c.size());
    for (Lit l : c) {
      auto it = map.find(var_of(l));
      Var v = it == map.end() ? var_of(l) : it->second;
      out.numVars = std::max(out.numVars, v);
      d.push_back(l > 0 ? v : -v);
    }
    out.clauses.push_back(std::move(d));
  }
  return out;
}

void add_equiv(Cnf& out, Lit lhs, Lit rhs) {
  out.add({-lhs, rhs});
  out.add({lhs, -rhs});
}

Lit negate_cnf(std::span<const Clause> clauses, Cnf& out) {
  const Var o = out.fresh();
  // falsified[j] <-> clause j is false; o <-> OR_j falsified[j].
  std::vector<Lit> falsified;
  falsified.reserve(clauses.size());
  for (const Clause& c : clauses) {
    if (c.empty()) {
      // A false clause: not(F) is true.
      out.add({o});
      return o;
    }
    if (c.size() == 1) {
      falsified.push_back(-c[0]);
      continue;
    }
    const Var t = out.fresh();
    Clause back{t};
    for (Lit l : c) {
      out.add({-t, -l});
      back.push_back(l);
    }
    out.add(std::move(back));
    falsified.push_back(t);
  }
  Clause big{-o};
  for (Lit t : falsified) {
    out.add({o, -t});
    big.push_back(t);
  }
  out.add(std::move(big));
  return o;
}

Lit TseitinEncoder::encode(Func f) {
  if (store_.is_const(f)) {
    if (trueLit_ == 0) {
      trueLit_ = out_.fresh();
      out_.add({trueLit_});
    }
    return f == FuncStore::kTrue ? trueLit_ : -trueLit_;
  }
  Func roots[] = {f};
  for (std::uint32_t n : store_.topo_order(roots)) {
    if (aux_.count(n)) continue;
    Func node = Func::from_raw(n << 1);
    switch (store_.kind(node)) {
      case NodeKind::Const: break;
      case NodeKind::Var: aux_[n] = leaf_lit(store_.var_id(node)); break;
      case NodeKind::And: {
        auto edge = [&](Func e) {
          if (store_.is_const(e)) return encode(e);
          Lit l = aux_.at(e.node());
          return e.negated() ? -l : l;
        };
        Lit a = edge(store_.left(node));
        Lit b = edge(store_.right(node));
        Lit t = out_.fresh();
        out_.add({-t, a});
        out_.add({-t, b});
        out_.add({t, -a, -b});
        aux_[n] = t;
        break;
      }
    }
  }
  Lit l = aux_.at(f.node());
  return f.negated() ? -l : l;
}

TseitinResult tseitin(const FuncStore& store, Func f, int& numVars) {
  Cnf out;
  out.numVars = numVars;
  TseitinEncoder enc(store, out);
  TseitinResult r;
  r.out = enc.encode(f);
  for (const auto& [node, lit] : enc.aux())
    if (store.kind(Func::from_raw(node << 1)) == NodeKind::And) r.aux.emplace(node, lit);
  r.clauses = std::move(out.clauses);
  numVars = out.numVars;
  return r;
}

}  // namespace skolem
