#include "ssalab/domains/oracle.hpp"

#include <algorithm>

#include "ssalab/util/errors.hpp"

namespace ssalab::domains {

namespace {

// DPLL worker over a mutable assignment vector (-1 free, 0/1 set).
// Unit propagation scans all clauses until fixpoint; small instances only.
struct DpllCtx {
  const Cnf& cnf;
  std::vector<int> assign;
  int64_t nodes = 0;
  int64_t node_cap;
  int64_t conflicts = 0;
  int64_t conflict_cap = -1;  // <0 = unlimited
  bool count_all = false;     // exhaustive node count, keep going past sat leaves

  DpllCtx(const Cnf& c, std::vector<int> a, int64_t cap)
      : cnf(c), assign(std::move(a)), node_cap(cap) {}

  // Returns false on an exposed contradiction; forced vars pushed on `trail`.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : cnf.clauses) {
        int unassigned = 0;
        Lit unit = 0;
        bool sat = false;
        for (Lit l : clause) {
          int v = lit_var(l);
          if (assign[v] < 0) {
            ++unassigned;
            unit = l;
          } else if (assign[v] == (lit_sign(l) ? 1 : 0)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          int v = lit_var(unit);
          assign[v] = lit_sign(unit) ? 1 : 0;
          trail.push_back(v);
          changed = true;
        }
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail, size_t mark) {
    while (trail.size() > mark) {
      assign[trail.back()] = -1;
      trail.pop_back();
    }
  }

  int pick_var() const {
    // static max-occurrence ordering over open clauses
    int best = -1, best_occ = -1;
    std::vector<int> occ(cnf.num_vars, 0);
    for (const auto& clause : cnf.clauses) {
      bool sat = false;
      for (Lit l : clause)
        if (assign[lit_var(l)] >= 0 &&
            assign[lit_var(l)] == (lit_sign(l) ? 1 : 0)) {
          sat = true;
          break;
        }
      if (sat) continue;
      for (Lit l : clause)
        if (assign[lit_var(l)] < 0) ++occ[lit_var(l)];
    }
    for (int v = 0; v < cnf.num_vars; ++v) {
      if (assign[v] < 0 && occ[v] > best_occ) {
        best = v;
        best_occ = occ[v];
      }
    }
    return best;
  }

  // 1 = satisfiable, 0 = refuted, -1 = conflict budget exhausted (unknown).
  // Restores trail/assign to the entry state before returning, except when
  // returning 1 with count_all==false (the satisfying assignment is kept).
  int search(std::vector<int>& trail) {
    if (++nodes > node_cap) throw ResourceLimit("oracle node cap exceeded");
    size_t mark = trail.size();
    if (!propagate(trail)) {
      undo(trail, mark);
      ++conflicts;
      if (conflict_cap >= 0 && conflicts > conflict_cap) return -1;
      return 0;
    }
    int v = pick_var();
    if (v < 0) {
      if (count_all) undo(trail, mark);
      return 1;
    }
    bool unknown = false, found = false;
    for (int val : {1, 0}) {
      assign[v] = val;
      trail.push_back(v);
      int r = search(trail);
      if (r == 1) {
        if (!count_all) return 1;
        found = true;
      }
      if (r == -1) unknown = true;
      trail.pop_back();
      assign[v] = -1;
    }
    undo(trail, mark);
    if (found) return 1;
    return unknown ? -1 : 0;
  }
};

}  // namespace

OracleVerdict oracle_solve(const Cnf& cnf, const std::vector<int>& fixed,
                           const OracleLimits& limits) {
  if (static_cast<int>(fixed.size()) != cnf.num_vars)
    throw InvalidParams("fixed assignment size mismatch");
  DpllCtx ctx(cnf, fixed, limits.node_cap);
  std::vector<int> trail;
  OracleVerdict v;
  v.satisfiable = (ctx.search(trail) == 1);
  v.nodes = ctx.nodes;
  if (v.satisfiable) {
    v.witness = ctx.assign;
    for (int& x : v.witness)
      if (x < 0) x = 1;  // free vars in a vacuous remainder default true
  }
  return v;
}

OracleVerdict oracle_solve(const Cnf& cnf, const OracleLimits& limits) {
  return oracle_solve(cnf, std::vector<int>(cnf.num_vars, -1), limits);
}

bool state_viable(const Cnf& cnf, const std::vector<int>& fixed,
                  const OracleLimits& limits) {
  return oracle_solve(cnf, fixed, limits).satisfiable;
}

bool probe_dead(const Cnf& cnf, const std::vector<int>& fixed,
                int64_t conflict_budget) {
  DpllCtx ctx(cnf, fixed, OracleLimits{}.node_cap);
  std::vector<int> trail;
  if (!ctx.propagate(trail)) return true;  // contradiction already exposed
  ctx.undo(trail, 0);
  ctx.conflict_cap = conflict_budget;
  return ctx.search(trail) == 0;
}

namespace {

struct GcCtx {
  const Graph& g;
  std::vector<int> colors;
  std::vector<std::vector<int>> adj;
  int64_t nodes = 0;
  int64_t cap;

  GcCtx(const Graph& graph, std::vector<int> fixed, int64_t node_cap)
      : g(graph), colors(std::move(fixed)), cap(node_cap) {
    adj.assign(g.num_nodes, {});
    for (const auto& [a, b] : g.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }

  bool legal(int node, int c) const {
    for (int nb : adj[node])
      if (colors[nb] == c) return false;
    return true;
  }

  int domain_size(int node) const {
    int cnt = 0;
    for (int c = 0; c < g.num_colors; ++c)
      if (legal(node, c)) ++cnt;
    return cnt;
  }

  bool search() {
    if (++nodes > cap) throw ResourceLimit("gc oracle node cap exceeded");
    int best = -1, best_dom = g.num_colors + 1;
    for (int n = 0; n < g.num_nodes; ++n) {
      if (colors[n] >= 0) continue;
      int d = domain_size(n);
      if (d == 0) return false;
      if (d < best_dom) {
        best = n;
        best_dom = d;
      }
    }
    if (best < 0) return true;
    for (int c = 0; c < g.num_colors; ++c) {
      if (!legal(best, c)) continue;
      colors[best] = c;
      if (search()) return true;
      colors[best] = -1;
    }
    return false;
  }
};

}  // namespace

OracleVerdict oracle_solve_gc(const Graph& g, const std::vector<int>& fixed,
                              const OracleLimits& limits) {
  if (static_cast<int>(fixed.size()) != g.num_nodes)
    throw InvalidParams("fixed coloring size mismatch");
  for (const auto& [a, b] : g.edges)
    if (fixed[a] >= 0 && fixed[a] == fixed[b]) return {false, {}, 1};
  GcCtx ctx(g, fixed, limits.node_cap);
  OracleVerdict v;
  v.satisfiable = ctx.search();
  v.nodes = ctx.nodes;
  if (v.satisfiable) v.witness = ctx.colors;
  return v;
}

OracleVerdict oracle_solve_gc(const Graph& g, const OracleLimits& limits) {
  return oracle_solve_gc(g, std::vector<int>(g.num_nodes, -1), limits);
}

namespace {

// Ends of every derivation of `sym` starting at `pos`, full backtracking
// across ordered alternatives. Inputs are short, so no memoization.
std::vector<size_t> peg_parse_ends(const PegTask& task, PegSymbol sym,
                                   size_t pos) {
  const auto& in = task.input;
  auto match = [&](size_t p, const char* tok) {
    return p < in.size() && in[p] == tok;
  };
  std::vector<char> seen(in.size() + 2, 0);
  std::vector<size_t> out;
  auto add = [&](size_t e) {
    if (!seen[e]) {
      seen[e] = 1;
      out.push_back(e);
    }
  };
  switch (sym) {
    case PegSymbol::expr:
      for (size_t mid : peg_parse_ends(task, PegSymbol::term, pos))
        for (size_t e : peg_parse_ends(task, PegSymbol::expr_tail, mid))
          add(e);
      break;
    case PegSymbol::expr_tail:
      if (match(pos, "+"))
        for (size_t e : peg_parse_ends(task, PegSymbol::expr, pos + 1)) add(e);
      add(pos);  // epsilon
      break;
    case PegSymbol::term:
      for (size_t mid : peg_parse_ends(task, PegSymbol::factor, pos))
        for (size_t e : peg_parse_ends(task, PegSymbol::term_tail, mid))
          add(e);
      break;
    case PegSymbol::term_tail:
      if (match(pos, "*"))
        for (size_t e : peg_parse_ends(task, PegSymbol::term, pos + 1)) add(e);
      add(pos);
      break;
    case PegSymbol::factor:
      if (match(pos, "(")) {
        for (size_t mid : peg_parse_ends(task, PegSymbol::expr, pos + 1))
          if (match(mid, ")")) add(mid + 1);
      }
      if (match(pos, "NUM")) {
        add(pos + 1);
        if (match(pos + 1, "NUM")) add(pos + 2);
      }
      break;
  }
  return out;
}

}  // namespace

bool peg_reference_parse(const PegTask& task) {
  for (size_t e : peg_parse_ends(task, PegSymbol::expr, 0))
    if (e == task.input.size()) return true;
  return false;
}

}  // namespace ssalab::domains
