#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "skolem/encode.hpp"
#include "skolem/io.hpp"
#include "skolem/skolem_vector.hpp"

using namespace skolem;

namespace {

const char* kEx1 =
    "c example\n"
    "p cnf 6 4\n"
    "a 1 2 0\n"
    "e 3 4 5 6 0\n"
    "1 2 3 0\n"
    "2 -3 4 0\n"
    "5 6 0\n"
    "-5 -6 0\n";

Cnf clauses_of(std::initializer_list<Clause> cs, int n) {
  Cnf f;
  f.numVars = n;
  for (auto c : cs) {
    normalize_clause(c);
    f.clauses.push_back(c);
  }
  return f;
}

}  // namespace

TEST(Qdimacs, Minimal) {
  Spec s = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0");
  EXPECT_EQ(s.inputs, std::vector<Var>{1});
  EXPECT_EQ(s.outputs, std::vector<Var>{2});
  ASSERT_EQ(s.clauses().size(), 1u);
  EXPECT_EQ(s.clauses()[0], (Clause{1, 2}));
}

TEST(Qdimacs, Example1) {
  Spec s = parse_qdimacs(kEx1);
  EXPECT_EQ(s.inputs.size(), 2u);
  EXPECT_EQ(s.outputs.size(), 4u);
  EXPECT_EQ(s.clauses().size(), 4u);
}

TEST(Qdimacs, TautologyDropped) {
  Spec s = parse_qdimacs("p cnf 1 1\ne 1 0\n1 -1 0");
  EXPECT_TRUE(s.clauses().empty());
  EXPECT_EQ(s.outputs, std::vector<Var>{1});
}

TEST(Qdimacs, FreeVariablesAreInputs) {
  Spec s = parse_qdimacs("p cnf 3 1\ne 2 0\n1 2 3 0");
  EXPECT_EQ(s.inputs, (std::vector<Var>{1, 3}));
  EXPECT_EQ(s.outputs, std::vector<Var>{2});
}

TEST(Qdimacs, DuplicateLiteralsRemoved) {
  Spec s = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n2 1 2 0");
  EXPECT_EQ(s.clauses()[0], (Clause{1, 2}));
}

TEST(Qdimacs, Errors) {
  EXPECT_THROW(parse_qdimacs("1 2 0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf x 1\n1 0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 3 0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 2 1\ne 2 0\na 1 0\n1 2 0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 3 1\na 1 0\ne 2 0\na 3 0\n1 2 3 0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 2 2\na 1 0\ne 2 0\n1 2 0"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 2 1\na 1 0\ne 1 2 0\n1 2 0"), ParseError);
}

TEST(Qdimacs, PrintParseFixpoint) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + static_cast<int>(rng() % 9);
    Cnf f = oracle::random_cnf(rng, n, 1 + static_cast<int>(rng() % 12), 4);
    Spec s;
    s.cnf = f;
    for (Var v = 1; v <= n; ++v) (rng() % 2 ? s.inputs : s.outputs).push_back(v);
    std::string once = to_qdimacs(s);
    Spec p = parse_qdimacs(once);
    std::string twice = to_qdimacs(p);
    EXPECT_EQ(once, twice);
    Spec q = parse_qdimacs(twice);
    EXPECT_EQ(p.cnf.clauses, q.cnf.clauses);
    EXPECT_EQ(p.inputs, q.inputs);
    EXPECT_EQ(p.outputs, q.outputs);
  }
}

TEST(Cofactor, Examples) {
  Cnf c1 = cofactor(clauses_of({{1, 2}}, 2), 2, true);
  EXPECT_TRUE(c1.clauses.empty());

  Cnf c3 = cofactor(clauses_of({{1}, {-1}}, 1), 1, false);
  EXPECT_TRUE(c3.has_empty_clause());

  Spec ex1 = parse_qdimacs(kEx1);
  Spec c2 = cofactor(ex1, 5, true);
  std::vector<Clause> want = {{1, 2, 3}, {2, -3, 4}, {-6}};
  EXPECT_EQ(c2.clauses(), want);
  // Truth-table equivalence over the five remaining variables.
  std::vector<Var> rest = {1, 2, 3, 4, 6};
  oracle::for_all(rest, 6, [&](const Assignment& a) {
    Assignment full = a;
    full.set(5, true);
    EXPECT_EQ(oracle::eval_cnf(c2.clauses(), a), oracle::eval_cnf(ex1.clauses(), full));
  });
}

TEST(Cofactor, MatchesOracle) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    int n = 1 + static_cast<int>(rng() % 10);
    Cnf f = oracle::random_cnf(rng, n, static_cast<int>(rng() % 15), 4);
    Var v = 1 + static_cast<Var>(rng() % static_cast<unsigned>(n));
    bool b = rng() % 2;
    Cnf g = cofactor(f, v, b);
    oracle::for_all(oracle::range_vars(n), n, [&](const Assignment& a) {
      Assignment fixed = a;
      fixed.set(v, b);
      ASSERT_EQ(oracle::eval_cnf(g.clauses, a), oracle::eval_cnf(f.clauses, fixed));
    });
  }
}

namespace {

// Projection of models of (clauses + unit) onto vars 1..n.
std::set<std::uint64_t> projected_models(const Cnf& g, Lit unit, int n) {
  std::set<std::uint64_t> out;
  std::vector<Var> all = oracle::range_vars(g.numVars);
  oracle::for_all(all, g.numVars, [&](const Assignment& a) {
    if (!a.holds(unit) || !oracle::eval_cnf(g.clauses, a)) return;
    std::uint64_t m = 0;
    for (int i = 0; i < n; ++i)
      if (a[i + 1]) m |= 1ull << i;
    out.insert(m);
  });
  return out;
}

}  // namespace

TEST(NegateCnf, Examples) {
  {
    Cnf f = clauses_of({{1}}, 1);
    Cnf g;
    g.numVars = 1;
    Lit o = negate_cnf(f.clauses, g);
    EXPECT_EQ(projected_models(g, o, 1), (std::set<std::uint64_t>{0}));
  }
  {
    Cnf f = clauses_of({{1, 2}, {-1, -2}}, 2);
    Cnf g;
    g.numVars = 2;
    Lit o = negate_cnf(f.clauses, g);
    EXPECT_EQ(projected_models(g, o, 2), (std::set<std::uint64_t>{0b00, 0b11}));
  }
  {
    Cnf g;
    Lit o = negate_cnf({}, g);
    EXPECT_TRUE(projected_models(g, o, 0).empty());
    EXPECT_EQ(projected_models(g, -o, 0).size(), 1u);
  }
}

TEST(NegateCnf, MatchesOracle) {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 150; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    Cnf f = oracle::random_cnf(rng, n, 1 + static_cast<int>(rng() % 5), 3);
    Cnf g;
    g.numVars = n;
    Lit o = negate_cnf(f.clauses, g);
    ASSERT_LE(g.numVars, 14);
    // For each assignment of F's variables the encoding has exactly one
    // extension, and o takes the value of not F there.
    oracle::for_all(oracle::range_vars(n), n, [&](const Assignment& x) {
      bool neg = !oracle::eval_cnf(f.clauses, x);
      Assignment want = x;
      want.set(var_of(o), (o > 0) == neg);
      EXPECT_TRUE(oracle::extends(g, want));
      Assignment other = x;
      other.set(var_of(o), (o > 0) != neg);
      EXPECT_FALSE(oracle::extends(g, other));
    });
  }
}

TEST(Tseitin, Examples) {
  FuncStore st;
  int n = 2;
  TseitinResult r = tseitin(st, st.var(1), n);
  EXPECT_EQ(r.out, 1);
  EXPECT_TRUE(r.clauses.empty());
  EXPECT_EQ(n, 2);

  n = 2;
  TseitinResult t = tseitin(st, st.kTrue, n);
  EXPECT_EQ(n, 3);
  EXPECT_EQ(t.out, 3);
  ASSERT_EQ(t.clauses.size(), 1u);
  EXPECT_EQ(t.clauses[0], Clause{3});

  n = 2;
  TseitinResult u = tseitin(st, st.lor(!st.var(1), st.var(2)), n);
  Cnf g;
  g.numVars = n;
  g.clauses = u.clauses;
  EXPECT_EQ(projected_models(g, u.out, 2), (std::set<std::uint64_t>{0b00, 0b10, 0b11}));
}

namespace {

Func random_func(FuncStore& st, std::mt19937_64& rng, const std::vector<Var>& vars, int depth) {
  if (depth == 0 || rng() % 4 == 0) {
    if (rng() % 10 == 0) return st.constant(rng() % 2);
    return st.var(vars[rng() % vars.size()]) ^ static_cast<bool>(rng() % 2);
  }
  Func a = random_func(st, rng, vars, depth - 1), b = random_func(st, rng, vars, depth - 1);
  switch (rng() % 4) {
    case 0: return st.land(a, b);
    case 1: return st.lor(a, b);
    case 2: return st.lxor(a, b);
    default: return !st.land(a, b);
  }
}

}  // namespace

TEST(Tseitin, MatchesOracle) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    FuncStore st;
    int n = 1 + static_cast<int>(rng() % 5);
    Func f = random_func(st, rng, oracle::range_vars(n), 3);
    int nv = n;
    TseitinResult r = tseitin(st, f, nv);
    Cnf g;
    g.numVars = nv;
    g.clauses = r.clauses;
    if (nv > 18) continue;
    oracle::for_all(oracle::range_vars(n), n, [&](const Assignment& x) {
      bool val = st.eval(f, x);
      Assignment want = x;
      want.set(var_of(r.out), (r.out > 0) == val);
      Assignment other = x;
      other.set(var_of(r.out), (r.out > 0) != val);
      if (var_of(r.out) > n) {
        EXPECT_TRUE(oracle::extends(g, want));
        EXPECT_FALSE(oracle::extends(g, other));
      } else {
        EXPECT_TRUE(oracle::extends(g, x));
        EXPECT_EQ(x.holds(r.out), val);
      }
    });
  }
}

TEST(FuncStore, HashConsing) {
  FuncStore st;
  Func a = st.land(st.var(1), !st.var(2));
  Func b = st.land(!st.var(2), st.var(1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(!!a, a);
  std::size_t before = st.size();
  Func c = st.lor(st.lxor(st.var(1), st.var(2)), st.var(3));
  Func d = st.lor(st.lxor(st.var(1), st.var(2)), st.var(3));
  EXPECT_EQ(c, d);
  EXPECT_GT(st.size(), before);
  EXPECT_EQ(st.land(st.var(1), st.kFalse), st.kFalse);
  EXPECT_EQ(st.land(st.var(1), st.kTrue), st.var(1));
  EXPECT_EQ(st.land(st.var(1), !st.var(1)), st.kFalse);
  EXPECT_EQ(st.land(st.var(1), st.var(1)), st.var(1));
}

TEST(FuncStore, DagNoLargerThanTree) {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 200; ++it) {
    FuncStore st;
    Func f = random_func(st, rng, oracle::range_vars(4), 5);
    std::vector<Func> roots{f};
    EXPECT_LE(st.topo_order(roots).size(), st.tree_size(f));
  }
}

TEST(FuncStore, PrefixDump) {
  FuncStore st;
  Func f = st.land(!st.var(1), st.var(3));
  std::string s = st.to_prefix(f, [](Var v) { return (v == 1 ? "x" : "y") + std::to_string(v); });
  EXPECT_EQ(s, "and(not(x1), y3)");
  EXPECT_EQ(st.to_prefix(st.kTrue), "1");
  EXPECT_EQ(st.to_prefix(st.kFalse), "0");
}

TEST(Ground, Example1) {
  FuncStore st;
  // x1=1 x2=2 y1=3 y2=4 y3=5 y4=6
  SkolemVector psi({3, 4, 5, 6});
  Func x1 = st.var(1), x2 = st.var(2);
  psi.func(3) = st.lor(x1, st.land(!x1, !x2));
  psi.func(4) = st.lor(!x1, st.var(3));
  psi.func(5) = x2;
  psi.func(6) = !st.var(5);
  SkolemVector g = ground(st, psi, {6, 5, 4, 3});
  std::vector<Var> xs = {1, 2};
  EXPECT_TRUE(oracle::equivalent(st, g.func(6), !x2, xs, 6));
  EXPECT_TRUE(oracle::equivalent(st, g.func(4), st.kTrue, xs, 6));
  for (Var y : {3, 4, 5, 6})
    for (Var v : st.support(g.func(y))) EXPECT_TRUE(v == 1 || v == 2);
}

TEST(Ground, Simple) {
  FuncStore st;
  SkolemVector psi({2, 3});
  psi.func(2) = st.var(3);
  psi.func(3) = st.var(1);
  SkolemVector g = ground(st, psi, {2, 3});
  EXPECT_EQ(g.func(2), st.var(1));

  SkolemVector k({2, 3});
  k.func(2) = st.kTrue;
  k.func(3) = st.kFalse;
  SkolemVector gk = ground(st, k, {3, 2});
  EXPECT_EQ(gk.funcs, k.funcs);
}

TEST(Ground, CycleReported) {
  FuncStore st;
  SkolemVector psi({2, 3});
  psi.func(2) = st.var(3);
  psi.func(3) = st.var(2);
  EXPECT_THROW(ground(st, psi, {2, 3}), InternalError);
}

TEST(Ground, MatchesNaiveSubstitution) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    FuncStore st;
    int nx = 1 + static_cast<int>(rng() % 4), ny = 1 + static_cast<int>(rng() % 4);
    std::vector<Var> xs = oracle::range_vars(nx), ys;
    for (int i = 0; i < ny; ++i) ys.push_back(nx + 1 + i);
    std::vector<Var> order = ys;
    std::shuffle(order.begin(), order.end(), rng);
    SkolemVector psi(ys);
    for (std::size_t p = 0; p < order.size(); ++p) {
      std::vector<Var> leaves = xs;
      leaves.insert(leaves.end(), order.begin() + static_cast<long>(p) + 1, order.end());
      psi.func(order[p]) = random_func(st, rng, leaves, 3);
    }
    SkolemVector g = ground(st, psi, order);
    int n = nx + ny;
    oracle::for_all(xs, n, [&](const Assignment& x) {
      // Naive: evaluate in reverse order, one output at a time.
      Assignment a = x;
      for (auto it2 = order.rbegin(); it2 != order.rend(); ++it2) a.set(*it2, st.eval(psi.func(*it2), a));
      for (Var y : ys) ASSERT_EQ(st.eval(g.func(y), x), a[y]);
      Assignment e = evaluate_vector(st, psi, order, x);
      for (Var y : ys) ASSERT_EQ(e[y], a[y]);
    });
  }
}

TEST(Aag, Constants) {
  FuncStore st;
  SkolemVector psi({2});
  psi.func(2) = st.kTrue;
  std::string s = write_aag(st, psi, {1});
  EXPECT_EQ(s.substr(0, s.find('\n')), "aag 1 1 0 1 0");
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "2");
  std::getline(in, line);
  EXPECT_EQ(line, "1");
}

TEST(Aag, Negation) {
  FuncStore st;
  SkolemVector psi({2});
  psi.func(2) = !st.var(1);
  std::istringstream in(write_aag(st, psi, {1}));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "3");
}

TEST(Aag, RoundTrip) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 200; ++it) {
    FuncStore st;
    int nx = 1 + static_cast<int>(rng() % 5);
    std::vector<Var> xs = oracle::range_vars(nx);
    SkolemVector psi({nx + 1, nx + 2});
    psi.func(nx + 1) = random_func(st, rng, xs, 4);
    psi.func(nx + 2) = random_func(st, rng, xs, 4);
    std::string text = write_aag(st, psi, xs);
    FuncStore other;
    AagCircuit c = read_aag(text, other, xs);
    ASSERT_EQ(c.outputs.size(), 2u);
    oracle::for_all(xs, nx, [&](const Assignment& x) {
      EXPECT_EQ(other.eval(c.outputs[0], x), st.eval(psi.funcs[0], x));
      EXPECT_EQ(other.eval(c.outputs[1], x), st.eval(psi.funcs[1], x));
    });
  }
}

TEST(Aag, RejectsNonInputLeaf) {
  FuncStore st;
  SkolemVector psi({2});
  psi.func(2) = st.var(3);
  EXPECT_THROW(write_aag(st, psi, {1}), InternalError);
}

TEST(Aag, ReaderErrors) {
  FuncStore st;
  EXPECT_THROW(read_aag("aag 1 1 1 0 0\n2\n2 3\n", st, {1}), ParseError);
  EXPECT_THROW(read_aag("aag 1 1 0 1 0\n2\n2\n", st, {1, 2}), ParseError);
  EXPECT_THROW(read_aag("garbage", st, {1}), ParseError);
}
