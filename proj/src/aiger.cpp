#include <charconv>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "skolem/io.hpp"

namespace skolem {

std::string write_aag(const FuncStore& store, const SkolemVector& psi, const std::vector<Var>& inputs) {
  std::unordered_map<Var, unsigned> inputIndex;
  for (std::size_t i = 0; i < inputs.size(); ++i) inputIndex[inputs[i]] = static_cast<unsigned>(i + 1);

  std::unordered_map<std::uint32_t, unsigned> aigVar;  // store node -> AIGER variable
  std::vector<std::uint32_t> gates;
  for (std::uint32_t n : store.topo_order(psi.funcs)) {
    Func node = Func::from_raw(n << 1);
    switch (store.kind(node)) {
      case NodeKind::Const: break;
      case NodeKind::Var: {
        auto it = inputIndex.find(store.var_id(node));
        if (it == inputIndex.end())
          throw InternalError("write_aag: function depends on non-input variable " +
                              std::to_string(store.var_id(node)));
        aigVar[n] = it->second;
        break;
      }
      case NodeKind::And:
        gates.push_back(n);
        aigVar[n] = static_cast<unsigned>(inputs.size() + gates.size());
        break;
    }
  }
  auto lit = [&](Func f) -> unsigned {
    if (store.is_const(f)) return f == FuncStore::kTrue ? 1u : 0u;
    return 2 * aigVar.at(f.node()) + (f.negated() ? 1u : 0u);
  };

  std::ostringstream os;
  os << "aag " << inputs.size() + gates.size() << ' ' << inputs.size() << " 0 " << psi.funcs.size() << ' '
     << gates.size() << '\n';
  for (std::size_t i = 0; i < inputs.size(); ++i) os << 2 * (i + 1) << '\n';
  for (Func f : psi.funcs) os << lit(f) << '\n';
  for (std::uint32_t n : gates) {
    Func node = Func::from_raw(n << 1);
    unsigned a = lit(store.left(node));
    unsigned b = lit(store.right(node));
    if (a < b) std::swap(a, b);
    os << 2 * aigVar.at(n) << ' ' << a << ' ' << b << '\n';
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) os << 'i' << i << ' ' << inputs[i] << '\n';
  for (std::size_t i = 0; i < psi.outputs.size(); ++i) os << 'o' << i << ' ' << psi.outputs[i] << '\n';
  return os.str();
}

AagCircuit read_aag(std::string_view text, FuncStore& store, const std::vector<Var>& inputs) {
  std::istringstream in{std::string(text)};
  auto next = [&](const char* what) {
    unsigned long v = 0;
    if (!(in >> v)) throw ParseError(std::string("aag: expected ") + what);
    return v;
  };
  std::string magic;
  if (!(in >> magic) || magic != "aag") throw ParseError("aag: bad magic");
  unsigned long m = next("M"), ni = next("I"), nl = next("L"), no = next("O"), na = next("A");
  if (nl != 0) throw ParseError("aag: latches are not supported");
  if (ni != inputs.size())
    throw ParseError("aag: circuit has " + std::to_string(ni) + " inputs, expected " + std::to_string(inputs.size()));

  std::unordered_map<unsigned long, Func> value;  // AIGER variable -> function
  for (unsigned long i = 0; i < ni; ++i) {
    unsigned long l = next("input literal");
    if (l < 2 || (l & 1) || l / 2 > m) throw ParseError("aag: bad input literal");
    value[l / 2] = store.var(inputs[i]);
  }
  std::vector<unsigned long> outLits(no);
  for (auto& l : outLits) l = next("output literal");
  std::unordered_map<unsigned long, std::pair<unsigned long, unsigned long>> ands;
  for (unsigned long i = 0; i < na; ++i) {
    unsigned long lhs = next("and lhs"), r0 = next("and rhs0"), r1 = next("and rhs1");
    if ((lhs & 1) || lhs / 2 > m || value.count(lhs / 2) || ands.count(lhs / 2))
      throw ParseError("aag: bad and gate lhs " + std::to_string(lhs));
    ands[lhs / 2] = {r0, r1};
  }

  std::unordered_map<unsigned long, char> visiting;
  std::function<Func(unsigned long)> resolve = [&](unsigned long l) -> Func {
    if (l / 2 == 0) return store.constant(l & 1);
    unsigned long v = l / 2;
    auto it = value.find(v);
    if (it == value.end()) {
      auto g = ands.find(v);
      if (g == ands.end()) throw ParseError("aag: undefined literal " + std::to_string(l));
      if (visiting[v]) throw ParseError("aag: combinational cycle");
      visiting[v] = 1;
      Func f = store.land(resolve(g->second.first), resolve(g->second.second));
      it = value.emplace(v, f).first;
    }
    return it->second ^ ((l & 1) != 0);
  };

  AagCircuit circuit;
  for (unsigned long l : outLits) circuit.outputs.push_back(resolve(l));
  circuit.outputNames.resize(no);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') break;
    if (line[0] == 'o') {
      std::size_t sp = line.find(' ');
      unsigned long idx = 0;
      auto [p, ec] = std::from_chars(line.data() + 1, line.data() + (sp == std::string::npos ? line.size() : sp), idx);
      if (ec == std::errc() && sp != std::string::npos && idx < no) circuit.outputNames[idx] = line.substr(sp + 1);
    }
  }
  return circuit;
}

}  // namespace skolem
