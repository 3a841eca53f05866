#include "skolem/sat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <set>

namespace skolem::sat {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Sat: return "SAT";
    case Status::Unsat: return "UNSAT";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

// Internal literal code: 2*v + sign, v >= 1.
inline int code(Lit l) { return l > 0 ? 2 * l : 2 * (-l) + 1; }
inline Lit decode(int c) { return (c & 1) ? -(c >> 1) : (c >> 1); }
inline int cvar(int c) { return c >> 1; }
inline int cneg(int c) { return c ^ 1; }

constexpr std::int8_t kFalse = 0, kTrue = 1, kUndef = 2;

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

Clause sorted_clause(Clause c) {
  normalize_clause(c);
  return c;
}

Clause resolve(const Clause& a, const Clause& b, Var pivot, bool* ok) {
  bool aPos = std::find(a.begin(), a.end(), pivot) != a.end();
  bool aNeg = std::find(a.begin(), a.end(), -pivot) != a.end();
  bool bPos = std::find(b.begin(), b.end(), pivot) != b.end();
  bool bNeg = std::find(b.begin(), b.end(), -pivot) != b.end();
  *ok = (aPos && bNeg) || (aNeg && bPos);
  Clause r;
  r.reserve(a.size() + b.size());
  for (Lit l : a)
    if (var_of(l) != pivot) r.push_back(l);
  for (Lit l : b)
    if (var_of(l) != pivot) r.push_back(l);
  normalize_clause(r);
  return r;
}

}  // namespace

std::string ResolutionProof::check() const {
  if (nodes.empty()) return "empty proof";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.leaf) continue;
    if (n.left < 0 || n.right < 0 || n.left >= static_cast<int>(i) || n.right >= static_cast<int>(i))
      return "node " + std::to_string(i) + ": bad parents";
    bool ok = false;
    Clause r = resolve(nodes[n.left].clause, nodes[n.right].clause, n.pivot, &ok);
    if (!ok) return "node " + std::to_string(i) + ": pivot " + std::to_string(n.pivot) + " not clashing";
    if (r != n.clause) return "node " + std::to_string(i) + ": resolvent mismatch";
  }
  if (!nodes.back().clause.empty()) return "root is not the empty clause";
  return {};
}

struct Solver::Impl {
  Options opts;
  std::mt19937_64 rng;

  struct ClauseData {
    std::vector<int> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
    int proofId = -1;
  };
  struct Watcher {
    int cref;
    int blocker;
  };

  // Proof log: leaves and resolution chains.
  struct ProofEntry {
    bool leaf = true;
    Partition part = Partition::A;
    Clause clause;                          // leaves only
    int start = -1;                         // chains only
    std::vector<std::pair<Var, int>> steps; // (pivot, entry)
  };
  std::vector<ProofEntry> proofLog;
  int emptyProof = -1;
  std::vector<int> unitProof;   // per var, proof entry of the level-0 unit
  std::size_t unitCursor = 0;   // level-0 trail entries with unitProof derived

  std::vector<ClauseData> clauses;
  std::vector<int> learnts;
  std::vector<std::vector<Watcher>> watches;  // per literal code
  std::vector<std::int8_t> assigns;
  std::vector<int> level;
  std::vector<int> reason;
  std::vector<char> seen;
  std::vector<char> savedPhase;  // 1 = true
  std::vector<double> activity;
  std::vector<double> bias;
  std::vector<int> trail;
  std::vector<int> trailLim;
  std::size_t qhead = 0;
  bool ok = true;

  // Binary max-heap over activity.
  std::vector<int> heap;
  std::vector<int> heapPos;

  double varInc = 1.0, claInc = 1.0;
  const double varDecay = 0.95, claDecay = 0.999;
  double maxLearnts = 0;

  std::vector<Lit> assumptions;
  std::vector<Lit> conflictCore;
  Assignment modelVals;
  std::int64_t budget = -1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::ostream* drat = nullptr;

  std::uint64_t nConflicts = 0, nDecisions = 0;

  explicit Impl(Options o) : opts(o), rng(o.seed), budget(o.conflictBudget), deadline(o.deadline) {
    watches.resize(2);
    assigns.push_back(kUndef);
    level.push_back(0);
    reason.push_back(-1);
    seen.push_back(0);
    savedPhase.push_back(0);
    activity.push_back(0);
    unitProof.push_back(-1);
    heapPos.push_back(-1);
  }

  int nVars() const { return static_cast<int>(assigns.size()) - 1; }
  int decisionLevel() const { return static_cast<int>(trailLim.size()); }
  std::int8_t value(int c) const {
    std::int8_t a = assigns[cvar(c)];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ (c & 1));
  }

  // --- heap -------------------------------------------------------------
  bool heapLess(int a, int b) const { return activity[a] > activity[b] || (activity[a] == activity[b] && a < b); }
  void heapUp(int i) {
    int v = heap[i];
    while (i > 0) {
      int p = (i - 1) / 2;
      if (!heapLess(v, heap[p])) break;
      heap[i] = heap[p];
      heapPos[heap[i]] = i;
      i = p;
    }
    heap[i] = v;
    heapPos[v] = i;
  }
  void heapDown(int i) {
    int v = heap[i];
    int n = static_cast<int>(heap.size());
    for (;;) {
      int c = 2 * i + 1;
      if (c >= n) break;
      if (c + 1 < n && heapLess(heap[c + 1], heap[c])) ++c;
      if (!heapLess(heap[c], v)) break;
      heap[i] = heap[c];
      heapPos[heap[i]] = i;
      i = c;
    }
    heap[i] = v;
    heapPos[v] = i;
  }
  void heapInsert(int v) {
    if (heapPos[v] >= 0) return;
    heap.push_back(v);
    heapPos[v] = static_cast<int>(heap.size()) - 1;
    heapUp(heapPos[v]);
  }
  int heapPop() {
    int v = heap[0];
    heap[0] = heap.back();
    heapPos[heap[0]] = 0;
    heap.pop_back();
    heapPos[v] = -1;
    if (!heap.empty()) heapDown(0);
    return v;
  }
  void heapRebuild() {
    std::vector<int> vs;
    for (int v = 1; v <= nVars(); ++v) {
      heapPos[v] = -1;
      if (assigns[v] == kUndef) vs.push_back(v);
    }
    heap.clear();
    for (int v : vs) heapInsert(v);
  }

  // --- variables ----------------------------------------------------------
  int newVar() {
    int v = nVars() + 1;
    assigns.push_back(kUndef);
    level.push_back(0);
    reason.push_back(-1);
    seen.push_back(0);
    savedPhase.push_back(0);
    activity.push_back(0);
    unitProof.push_back(-1);
    heapPos.push_back(-1);
    watches.resize(2 * static_cast<std::size_t>(v) + 2);
    heapInsert(v);
    return v;
  }

  void varBump(int v) {
    if ((activity[v] += varInc) > 1e100) {
      for (int u = 1; u <= nVars(); ++u) activity[u] *= 1e-100;
      varInc *= 1e-100;
    }
    if (heapPos[v] >= 0) heapUp(heapPos[v]);
  }
  void claBump(ClauseData& c) {
    if ((c.activity += claInc) > 1e20) {
      for (int cr : learnts) clauses[cr].activity *= 1e-20;
      claInc *= 1e-20;
    }
  }

  // --- proof --------------------------------------------------------------
  int proofLeaf(Clause c, Partition p) {
    ProofEntry e;
    e.leaf = true;
    e.part = p;
    e.clause = sorted_clause(std::move(c));
    proofLog.push_back(std::move(e));
    return static_cast<int>(proofLog.size()) - 1;
  }
  int proofChain(int start, std::vector<std::pair<Var, int>> steps) {
    if (steps.empty()) return start;
    ProofEntry e;
    e.leaf = false;
    e.start = start;
    e.steps = std::move(steps);
    proofLog.push_back(std::move(e));
    return static_cast<int>(proofLog.size()) - 1;
  }
  // Derives unit proofs for all level-0 trail entries in trail order.
  void deriveUnits() {
    std::size_t end = trailLim.empty() ? trail.size() : static_cast<std::size_t>(trailLim[0]);
    for (; unitCursor < end; ++unitCursor) {
      int v = cvar(trail[unitCursor]);
      if (unitProof[v] >= 0) continue;
      int r = reason[v];
      assert(r >= 0);
      const ClauseData& c = clauses[r];
      std::vector<std::pair<Var, int>> steps;
      for (int q : c.lits) {
        if (cvar(q) == v) continue;
        steps.emplace_back(cvar(q), unitProof[cvar(q)]);
      }
      unitProof[v] = proofChain(c.proofId, std::move(steps));
    }
  }
  // Empty clause from a clause whose literals are all false at level 0.
  void deriveEmpty(int proofId, const std::vector<int>& lits) {
    deriveUnits();
    std::vector<std::pair<Var, int>> steps;
    for (int q : lits) steps.emplace_back(cvar(q), unitProof[cvar(q)]);
    emptyProof = proofChain(proofId, std::move(steps));
  }

  // --- assignment ---------------------------------------------------------
  void enqueue(int c, int from) {
    int v = cvar(c);
    assigns[v] = static_cast<std::int8_t>((c & 1) ? kFalse : kTrue);
    level[v] = decisionLevel();
    reason[v] = from;
    trail.push_back(c);
  }

  void cancelUntil(int lvl) {
    if (decisionLevel() <= lvl) return;
    for (int i = static_cast<int>(trail.size()) - 1; i >= trailLim[lvl]; --i) {
      int v = cvar(trail[i]);
      if (bias.empty()) savedPhase[v] = (trail[i] & 1) ? 0 : 1;
      assigns[v] = kUndef;
      reason[v] = -1;
      heapInsert(v);
    }
    trail.resize(trailLim[lvl]);
    trailLim.resize(lvl);
    qhead = trail.size();
  }

  int attach(std::vector<int> lits, bool learnt, int proofId) {
    ClauseData c;
    c.lits = std::move(lits);
    c.learnt = learnt;
    c.proofId = proofId;
    clauses.push_back(std::move(c));
    int cr = static_cast<int>(clauses.size()) - 1;
    const auto& ls = clauses[cr].lits;
    if (ls.size() >= 2) {
      watches[cneg(ls[0])].push_back({cr, ls[1]});
      watches[cneg(ls[1])].push_back({cr, ls[0]});
    }
    if (learnt) learnts.push_back(cr);
    return cr;
  }

  int propagate() {
    int confl = -1;
    while (qhead < trail.size()) {
      int p = trail[qhead++];  // p is true; visit clauses watching not(p)
      auto& ws = watches[p];
      std::size_t i = 0, j = 0;
      const int falseLit = cneg(p);
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        ClauseData& c = clauses[w.cref];
        if (c.deleted) {
          ++i;
          continue;
        }
        auto& ls = c.lits;
        if (ls[0] == falseLit) std::swap(ls[0], ls[1]);
        ++i;
        int first = ls[0];
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool found = false;
        for (std::size_t k = 2; k < ls.size(); ++k) {
          if (value(ls[k]) != kFalse) {
            std::swap(ls[1], ls[k]);
            watches[cneg(ls[1])].push_back({w.cref, first});
            found = true;
            break;
          }
        }
        if (found) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == kFalse) {
          confl = w.cref;
          qhead = trail.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (confl >= 0) break;
    }
    return confl;
  }

  // --- clause addition ----------------------------------------------------
  bool addClause(std::span<const Lit> in, Partition part) {
    Clause lits(in.begin(), in.end());
    for (Lit l : lits)
      while (var_of(l) > nVars()) newVar();
    if (!normalize_clause(lits)) return ok;
    cancelUntil(0);
    int proofId = opts.proof ? proofLeaf(lits, part) : -1;
    if (!ok) return false;

    std::vector<int> cs;
    cs.reserve(lits.size());
    for (Lit l : lits) {
      int c = code(l);
      if (value(c) == kTrue) return true;
      cs.push_back(c);
    }
    // Non-false literals first.
    std::stable_partition(cs.begin(), cs.end(), [&](int c) { return value(c) != kFalse; });
    int nonFalse = static_cast<int>(std::count_if(cs.begin(), cs.end(), [&](int c) { return value(c) != kFalse; }));
    if (!opts.proof) cs.resize(nonFalse);

    if (nonFalse == 0) {
      if (opts.proof) deriveEmpty(proofId, cs);
      ok = false;
      return false;
    }
    if (nonFalse == 1) {
      if (opts.proof) {
        // Keep the clause as the unit's reason so its proof can be rebuilt.
        ClauseData c;
        c.lits = cs;
        c.proofId = proofId;
        clauses.push_back(std::move(c));
        enqueue(cs[0], static_cast<int>(clauses.size()) - 1);
      } else {
        enqueue(cs[0], -1);
      }
      int confl = propagate();
      if (confl >= 0) {
        if (opts.proof) deriveEmpty(clauses[confl].proofId, clauses[confl].lits);
        ok = false;
      }
      return ok;
    }
    attach(std::move(cs), false, proofId);
    return true;
  }

  // --- conflict analysis --------------------------------------------------
  void analyze(int confl, std::vector<int>& learnt, int& btLevel, int& proofId) {
    int pathC = 0;
    int p = -1;
    learnt.assign(1, 0);
    int idx = static_cast<int>(trail.size()) - 1;
    int chainStart = clauses[confl].proofId;
    std::vector<std::pair<Var, int>> steps;
    std::vector<int> zeroVars;

    do {
      ClauseData& c = clauses[confl];
      if (c.learnt) claBump(c);
      for (std::size_t j = (p == -1) ? 0 : 1; j < c.lits.size(); ++j) {
        int q = c.lits[j];
        int v = cvar(q);
        if (seen[v]) continue;
        if (level[v] == 0) {
          if (opts.proof) {
            seen[v] = 2;
            zeroVars.push_back(v);
          }
          continue;
        }
        seen[v] = 1;
        varBump(v);
        if (level[v] >= decisionLevel())
          ++pathC;
        else
          learnt.push_back(q);
      }
      while (seen[cvar(trail[idx])] != 1) --idx;
      p = trail[idx];
      --idx;
      confl = reason[cvar(p)];
      seen[cvar(p)] = 0;
      --pathC;
      if (pathC > 0 && opts.proof) steps.emplace_back(cvar(p), clauses[confl].proofId);
    } while (pathC > 0);
    learnt[0] = cneg(p);

    const std::vector<int> marked(learnt.begin() + 1, learnt.end());
    if (!opts.proof) {
      // Local minimization: drop literals implied by other learnt literals.
      std::size_t j = 1;
      for (std::size_t i = 1; i < learnt.size(); ++i) {
        int v = cvar(learnt[i]);
        int r = reason[v];
        bool keep = true;
        if (r >= 0) {
          keep = false;
          for (std::size_t k = 1; k < clauses[r].lits.size(); ++k) {
            int u = cvar(clauses[r].lits[k]);
            if (!seen[u] && level[u] > 0) {
              keep = true;
              break;
            }
          }
        }
        if (keep) learnt[j++] = learnt[i];
      }
      learnt.resize(j);
    }

    btLevel = 0;
    if (learnt.size() > 1) {
      std::size_t maxI = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level[cvar(learnt[i])] > level[cvar(learnt[maxI])]) maxI = i;
      std::swap(learnt[1], learnt[maxI]);
      btLevel = level[cvar(learnt[1])];
    }
    for (int q : marked) seen[cvar(q)] = 0;

    proofId = -1;
    if (opts.proof) {
      deriveUnits();
      for (int v : zeroVars) {
        steps.emplace_back(v, unitProof[v]);
        seen[v] = 0;
      }
      proofId = proofChain(chainStart, std::move(steps));
    }
  }

  // Assumption literals (as given) responsible for assumption code p being false.
  void analyzeFinal(int p) {
    conflictCore.clear();
    conflictCore.push_back(decode(p));
    if (decisionLevel() == 0) return;
    seen[cvar(p)] = 1;
    for (int i = static_cast<int>(trail.size()) - 1; i >= trailLim[0]; --i) {
      int v = cvar(trail[i]);
      if (!seen[v]) continue;
      if (reason[v] < 0) {
        if (level[v] > 0) conflictCore.push_back(decode(trail[i]));
      } else {
        const auto& ls = clauses[reason[v]].lits;
        for (std::size_t k = 1; k < ls.size(); ++k)
          if (level[cvar(ls[k])] > 0) seen[cvar(ls[k])] = 1;
      }
      seen[v] = 0;
    }
    seen[cvar(p)] = 0;
  }

  void reduceDB() {
    std::vector<int> cand;
    for (int cr : learnts) {
      const ClauseData& c = clauses[cr];
      if (c.deleted) continue;
      cand.push_back(cr);
    }
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return clauses[a].activity < clauses[b].activity; });
    std::size_t toRemove = cand.size() / 2;
    std::vector<int> kept;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      ClauseData& c = clauses[cand[i]];
      int v0 = cvar(c.lits[0]);
      bool locked = reason[v0] == cand[i] && value(c.lits[0]) == kTrue;
      if (i < toRemove && !locked && c.lits.size() > 2) {
        if (drat) {
          *drat << "d";
          for (int q : c.lits) *drat << ' ' << decode(q);
          *drat << " 0\n";
        }
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
      } else {
        kept.push_back(cand[i]);
      }
    }
    learnts = std::move(kept);
    for (auto& ws : watches)
      ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const Watcher& w) { return clauses[w.cref].deleted; }),
               ws.end());
  }

  int pickBranch() {
    while (!heap.empty()) {
      int v = heapPop();
      if (assigns[v] != kUndef) continue;
      bool phase;
      if (!bias.empty()) {
        double b = v < static_cast<int>(bias.size()) ? bias[v] : 0.5;
        phase = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < b;
      } else {
        phase = savedPhase[v] != 0;
      }
      return phase ? 2 * v : 2 * v + 1;
    }
    return -1;
  }

  bool outOfBudget(std::int64_t conflictsThisCall) const {
    if (budget >= 0 && conflictsThisCall >= budget) return true;
    if (deadline && (conflictsThisCall & 63) == 0 && std::chrono::steady_clock::now() >= *deadline) return true;
    return false;
  }

  // Returns Sat/Unsat, or Unknown for a restart (restart=true) or budget.
  Status search(int nofConflicts, std::int64_t& callConflicts, bool& restart) {
    restart = false;
    int conflictC = 0;
    std::vector<int> learnt;
    for (;;) {
      int confl = propagate();
      if (confl >= 0) {
        ++nConflicts;
        ++conflictC;
        ++callConflicts;
        if (decisionLevel() == 0) {
          if (opts.proof) deriveEmpty(clauses[confl].proofId, clauses[confl].lits);
          ok = false;
          return Status::Unsat;
        }
        int bt = 0, pid = -1;
        analyze(confl, learnt, bt, pid);
        cancelUntil(bt);
        if (drat) {
          for (int q : learnt) *drat << decode(q) << ' ';
          *drat << "0\n";
        }
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
          if (opts.proof) unitProof[cvar(learnt[0])] = pid;
        } else {
          int cr = attach(learnt, true, pid);
          claBump(clauses[cr]);
          enqueue(learnt[0], cr);
        }
        varInc /= varDecay;
        claInc /= claDecay;
        continue;
      }
      if (nofConflicts >= 0 && conflictC >= nofConflicts) {
        cancelUntil(0);
        restart = true;
        return Status::Unknown;
      }
      if (outOfBudget(callConflicts)) {
        cancelUntil(0);
        return Status::Unknown;
      }
      if (static_cast<double>(learnts.size()) - static_cast<double>(trail.size()) >= maxLearnts) reduceDB();

      int next = -1;
      while (decisionLevel() < static_cast<int>(assumptions.size())) {
        int p = code(assumptions[static_cast<std::size_t>(decisionLevel())]);
        if (value(p) == kTrue) {
          trailLim.push_back(static_cast<int>(trail.size()));
        } else if (value(p) == kFalse) {
          analyzeFinal(p);
          return Status::Unsat;
        } else {
          next = p;
          break;
        }
      }
      if (next < 0) {
        ++nDecisions;
        next = pickBranch();
        if (next < 0) return Status::Sat;
      }
      trailLim.push_back(static_cast<int>(trail.size()));
      enqueue(next, -1);
    }
  }

  Status solve(std::span<const Lit> assumps) {
    conflictCore.clear();
    assumptions.assign(assumps.begin(), assumps.end());
    for (Lit l : assumptions)
      while (var_of(l) > nVars()) newVar();
    if (!ok) return Status::Unsat;
    cancelUntil(0);
    if (int confl = propagate(); confl >= 0) {
      if (opts.proof) deriveEmpty(clauses[confl].proofId, clauses[confl].lits);
      ok = false;
      return Status::Unsat;
    }
    maxLearnts = std::max(2000.0, static_cast<double>(clauses.size()) / 3.0);
    std::int64_t callConflicts = 0;
    Status st = Status::Unknown;
    for (int curr = 0;; ++curr) {
      bool restart = false;
      st = search(static_cast<int>(luby(2, curr) * 100), callConflicts, restart);
      if (!restart) break;
      maxLearnts *= 1.05;
      if (outOfBudget(callConflicts)) break;
    }
    if (st == Status::Sat) {
      modelVals = Assignment(nVars());
      for (int v = 1; v <= nVars(); ++v) modelVals.set(v, assigns[v] == kTrue);
    }
    cancelUntil(0);
    return st;
  }

  ResolutionProof exportProof() const {
    ResolutionProof out;
    if (emptyProof < 0) return out;
    // Collect reachable entries.
    std::vector<char> need(proofLog.size(), 0);
    std::vector<int> stack{emptyProof};
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      if (need[e]) continue;
      need[e] = 1;
      const ProofEntry& pe = proofLog[e];
      if (pe.leaf) continue;
      stack.push_back(pe.start);
      for (const auto& [piv, id] : pe.steps) stack.push_back(id);
    }
    std::vector<int> nodeOf(proofLog.size(), -1);
    // Entries only reference earlier entries, so index order is topological.
    for (std::size_t e = 0; e < proofLog.size(); ++e) {
      if (!need[e]) continue;
      const ProofEntry& pe = proofLog[e];
      if (pe.leaf) {
        ResolutionProof::Node n;
        n.leaf = true;
        n.part = pe.part;
        n.clause = pe.clause;
        out.nodes.push_back(std::move(n));
        nodeOf[e] = static_cast<int>(out.nodes.size()) - 1;
        continue;
      }
      int cur = nodeOf[pe.start];
      for (const auto& [piv, id] : pe.steps) {
        ResolutionProof::Node n;
        n.leaf = false;
        n.pivot = piv;
        n.left = cur;
        n.right = nodeOf[id];
        bool okRes = false;
        n.clause = resolve(out.nodes[n.left].clause, out.nodes[n.right].clause, piv, &okRes);
        out.nodes.push_back(std::move(n));
        cur = static_cast<int>(out.nodes.size()) - 1;
      }
      nodeOf[e] = cur;
    }
    // The root must be last.
    if (nodeOf[emptyProof] != out.root()) {
      ResolutionProof::Node n = out.nodes[nodeOf[emptyProof]];
      out.nodes.push_back(std::move(n));
    }
    return out;
  }
};

Solver::Solver(Options opts) : impl_(new Impl(opts)) {}
Solver::~Solver() { delete impl_; }

Var Solver::new_var() { return impl_->newVar(); }
void Solver::ensure_vars(int n) {
  while (impl_->nVars() < n) impl_->newVar();
}
int Solver::num_vars() const { return impl_->nVars(); }
bool Solver::add_clause(std::span<const Lit> lits, Partition part) { return impl_->addClause(lits, part); }
void Solver::add_cnf(const Cnf& f, Partition part) {
  ensure_vars(f.numVars);
  for (const Clause& c : f.clauses) impl_->addClause(c, part);
}
Status Solver::solve(std::span<const Lit> assumptions) { return impl_->solve(assumptions); }
const Assignment& Solver::model() const { return impl_->modelVals; }
const std::vector<Lit>& Solver::core() const { return impl_->conflictCore; }
ResolutionProof Solver::proof() const { return impl_->exportProof(); }
std::size_t Solver::proof_size() const { return impl_->proofLog.size(); }
void Solver::set_phase_bias(std::vector<double> bias) { impl_->bias = std::move(bias); }
void Solver::randomize_order() {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int v = 1; v <= impl_->nVars(); ++v) impl_->activity[v] = d(impl_->rng) * 1e-3;
  impl_->varInc = 1.0;
  impl_->heapRebuild();
}
void Solver::set_conflict_budget(std::int64_t budget) { impl_->budget = budget; }
void Solver::set_deadline(std::optional<std::chrono::steady_clock::time_point> d) { impl_->deadline = d; }
void Solver::set_drat(std::ostream* out) { impl_->drat = out; }
std::uint64_t Solver::conflicts() const { return impl_->nConflicts; }
std::uint64_t Solver::decisions() const { return impl_->nDecisions; }

SolveResult solve(const Cnf& f, std::span<const Lit> assumptions, const Options& opts) {
  Solver s(opts);
  s.add_cnf(f);
  SolveResult r;
  r.status = s.solve(assumptions);
  if (r.status == Status::Sat) r.model = s.model();
  if (r.status == Status::Unsat) r.core = s.core();
  return r;
}

ProofResult solve_with_proof(const Cnf& a, const Cnf& b, const Options& opts) {
  Options o = opts;
  o.proof = true;
  Solver s(o);
  s.ensure_vars(std::max(a.numVars, b.numVars));
  for (const Clause& c : a.clauses) s.add_clause(c, Partition::A);
  for (const Clause& c : b.clauses) s.add_clause(c, Partition::B);
  ProofResult r;
  r.status = s.solve();
  if (r.status == Status::Sat) r.model = s.model();
  if (r.status == Status::Unsat) r.proof = s.proof();
  return r;
}

std::vector<Lit> minimize_core(Solver& s, std::vector<Lit> core, int passes) {
  for (int pass = 0; pass < passes; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < core.size();) {
      std::vector<Lit> trial;
      trial.reserve(core.size() - 1);
      for (std::size_t j = 0; j < core.size(); ++j)
        if (j != i) trial.push_back(core[j]);
      if (s.solve(trial) == Status::Unsat) {
        // Keep only the part of the trial the solver actually used, preserving order.
        std::set<Lit> used(s.core().begin(), s.core().end());
        std::vector<Lit> next;
        for (Lit l : trial)
          if (used.count(l)) next.push_back(l);
        core = std::move(next);
        changed = true;
        // Positions before i were already tested in this pass.
        i = std::min(i, core.size());
      } else {
        ++i;
      }
    }
    if (!changed) break;
  }
  return core;
}

std::vector<Assignment> sample(const Cnf& f, std::span<const double> bias, int n, std::uint64_t seed) {
  Options o;
  o.seed = seed;
  Solver s(o);
  s.add_cnf(f);
  if (s.solve() != Status::Sat) throw SamplingError("cannot sample an unsatisfiable formula");
  std::vector<double> b(static_cast<std::size_t>(f.numVars) + 1, 0.5);
  for (std::size_t i = 0; i < bias.size() && i < b.size(); ++i) b[i] = bias[i];
  s.set_phase_bias(std::move(b));
  std::vector<Assignment> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    s.randomize_order();
    if (s.solve() != Status::Sat) throw SamplingError("solver failed while sampling");
    Assignment m(f.numVars);
    for (Var v = 1; v <= f.numVars; ++v) m.set(v, s.model()[v]);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace skolem::sat
