#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "skolem/io.hpp"

namespace skolem {
namespace {

long parse_int(std::string_view tok, int lineNo) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(lineNo) + ": expected integer, got '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Spec parse_qdimacs(std::istream& in) {
  Spec spec;
  bool haveHeader = false;
  long declaredClauses = 0;
  long clausesRead = 0;
  std::string prefixShape;  // one char per quantifier block
  std::vector<char> quantified;
  Clause current;
  bool inClause = false;
  std::vector<Var> freeVars;

  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0][0] == 'c') continue;
    if (toks[0] == "p") {
      if (haveHeader) throw ParseError("line " + std::to_string(lineNo) + ": duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError("line " + std::to_string(lineNo) + ": malformed header");
      long nv = parse_int(toks[2], lineNo);
      declaredClauses = parse_int(toks[3], lineNo);
      if (nv < 0 || declaredClauses < 0) throw ParseError("line " + std::to_string(lineNo) + ": negative header count");
      spec.cnf.numVars = static_cast<int>(nv);
      quantified.assign(static_cast<std::size_t>(nv) + 1, 0);
      haveHeader = true;
      continue;
    }
    if (!haveHeader) throw ParseError("line " + std::to_string(lineNo) + ": content before header");
    if (toks[0] == "a" || toks[0] == "e") {
      if (clausesRead > 0 || inClause)
        throw ParseError("line " + std::to_string(lineNo) + ": quantifier line after clauses");
      char q = toks[0][0];
      if (prefixShape.empty() || prefixShape.back() != q) prefixShape.push_back(q);
      if (prefixShape != "a" && prefixShape != "e" && prefixShape != "ae")
        throw ParseError("line " + std::to_string(lineNo) + ": not a 2QBF prefix (forall-exists expected)");
      if (toks.size() < 2 || toks.back() != "0")
        throw ParseError("line " + std::to_string(lineNo) + ": quantifier line not terminated by 0");
      for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
        long v = parse_int(toks[i], lineNo);
        if (v <= 0 || v > spec.cnf.numVars)
          throw ParseError("line " + std::to_string(lineNo) + ": variable " + std::string(toks[i]) + " out of range");
        if (quantified[v]) throw ParseError("line " + std::to_string(lineNo) + ": variable quantified twice");
        quantified[v] = q;
        (q == 'a' ? spec.inputs : spec.outputs).push_back(static_cast<Var>(v));
      }
      continue;
    }
    for (std::string_view tok : toks) {
      long l = parse_int(tok, lineNo);
      if (l == 0) {
        if (current.empty()) throw ParseError("line " + std::to_string(lineNo) + ": empty clause (trivially unsatisfiable)");
        ++clausesRead;
        if (normalize_clause(current)) spec.cnf.clauses.push_back(current);
        current.clear();
        inClause = false;
        continue;
      }
      if (std::labs(l) > spec.cnf.numVars)
        throw ParseError("line " + std::to_string(lineNo) + ": variable " + std::to_string(std::labs(l)) +
                         " exceeds header count");
      Var v = static_cast<Var>(std::labs(l));
      if (!quantified[v]) {
        quantified[v] = 'f';
        freeVars.push_back(v);
      }
      current.push_back(static_cast<Lit>(l));
      inClause = true;
    }
  }
  if (!haveHeader) throw ParseError("missing header");
  if (inClause) throw ParseError("unterminated clause at end of input");
  if (clausesRead != declaredClauses)
    throw ParseError("header declares " + std::to_string(declaredClauses) + " clauses, found " +
                     std::to_string(clausesRead));
  std::sort(freeVars.begin(), freeVars.end());
  spec.inputs.insert(spec.inputs.end(), freeVars.begin(), freeVars.end());
  return spec;
}

Spec parse_qdimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_qdimacs(in);
}

Spec read_qdimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_qdimacs(in);
}

void write_qdimacs(std::ostream& out, const Spec& spec) {
  out << "p cnf " << spec.cnf.numVars << ' ' << spec.cnf.clauses.size() << '\n';
  if (!spec.inputs.empty()) {
    out << 'a';
    for (Var v : spec.inputs) out << ' ' << v;
    out << " 0\n";
  }
  if (!spec.outputs.empty()) {
    out << 'e';
    for (Var v : spec.outputs) out << ' ' << v;
    out << " 0\n";
  }
  for (const Clause& c : spec.cnf.clauses) {
    for (Lit l : c) out << l << ' ';
    out << "0\n";
  }
}

std::string to_qdimacs(const Spec& spec) {
  std::ostringstream os;
  write_qdimacs(os, spec);
  return os.str();
}

}  // namespace skolem
