#include "ssalab/domains/generators.hpp"

#include <algorithm>
#include <set>

#include "ssalab/domains/oracle.hpp"
#include "ssalab/util/errors.hpp"

namespace ssalab::domains {

std::vector<int> planted_assignment(int num_vars, uint64_t seed) {
  Rng rng(Rng::mix(seed ^ 0x51a4ULL));
  std::vector<int> a(num_vars);
  for (int& x : a) x = static_cast<int>(rng.below(2));
  return a;
}

namespace {

std::vector<int> sample_distinct_vars(Rng& rng, int n, int k) {
  std::set<int> vars;
  while (static_cast<int>(vars.size()) < k)
    vars.insert(static_cast<int>(rng.below(n)));
  return {vars.begin(), vars.end()};
}

std::vector<Lit> sample_clause(Rng& rng, int n) {
  auto vars = sample_distinct_vars(rng, n, 3);
  std::vector<Lit> clause;
  for (int v : vars) clause.push_back(make_lit(v, rng.below(2) == 1));
  return clause;
}

bool clause_satisfied_by(const std::vector<Lit>& clause,
                         const std::vector<int>& assign) {
  for (Lit l : clause)
    if (assign[lit_var(l)] == (lit_sign(l) ? 1 : 0)) return true;
  return false;
}

}  // namespace

Cnf generate_sat(const SatGenParams& p, uint64_t seed) {
  if (p.num_vars < 3 || p.clause_ratio <= 0.0)
    throw InvalidParams("sat generator needs >=3 vars and positive ratio");
  const int m = static_cast<int>(p.clause_ratio * p.num_vars + 0.5);
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    Rng rng(Rng::mix(seed) ^ Rng::mix(attempt + 1));
    Cnf cnf;
    cnf.num_vars = p.num_vars;
    if (p.planted) {
      auto assign = planted_assignment(p.num_vars, seed);
      std::set<std::vector<Lit>> used;  // no duplicate clauses in planted mode
      while (static_cast<int>(cnf.clauses.size()) < m) {
        auto clause = sample_clause(rng, p.num_vars);
        if (!clause_satisfied_by(clause, assign)) {
          // flip one literal to agree with the planted assignment
          int i = static_cast<int>(rng.below(3));
          clause[i] = -clause[i];
        }
        if (used.insert(clause).second) cnf.clauses.push_back(clause);
      }
      return cnf;
    }
    for (int i = 0; i < m; ++i) cnf.clauses.push_back(sample_clause(rng, p.num_vars));
    if (!p.filter_satisfiable) return cnf;
    if (oracle_solve(cnf).satisfiable) return cnf;
  }
  throw ResourceLimit("no satisfiable random instance within attempt cap");
}

Graph generate_gc(const GcGenParams& p, uint64_t seed) {
  if (p.num_nodes < 2 || p.edge_prob < 0.0 || p.edge_prob > 1.0 ||
      p.num_colors < 1)
    throw InvalidParams("bad gc generator params");
  Rng rng(Rng::mix(seed ^ 0x6cULL));
  Graph g;
  g.num_nodes = p.num_nodes;
  g.num_colors = p.num_colors;
  for (int a = 0; a < p.num_nodes; ++a)
    for (int b = a + 1; b < p.num_nodes; ++b)
      if (rng.uniform() < p.edge_prob) g.add_edge(a, b);
  return g;
}

Tree generate_tree(const TreeGenParams& p, uint64_t seed) {
  if (p.num_nodes < 1) throw InvalidParams("tree needs >=1 node");
  Rng rng(Rng::mix(seed ^ 0x7eeULL));
  Tree t;
  t.root = 0;
  t.num_nodes = 1;
  std::vector<int> frontier = {0};
  while (t.num_nodes < p.num_nodes && !frontier.empty()) {
    size_t idx = static_cast<size_t>(rng.below(frontier.size()));
    int node = frontier[idx];
    frontier.erase(frontier.begin() + static_cast<long>(idx));
    int k = rng.range(2, 4);
    for (int i = 0; i < k && t.num_nodes < p.num_nodes; ++i) {
      int child = t.num_nodes++;
      t.children[node].push_back(child);
      frontier.push_back(child);
    }
  }
  return t;
}

Tree generate_star(const StarGenParams& p, uint64_t seed) {
  if (p.leaves < 1 || p.label_space <= p.leaves)
    throw InvalidParams("star needs 1 <= leaves < label_space");
  Rng rng(Rng::mix(seed ^ 0x57a2ULL));
  Tree t;
  t.root = 0;
  t.num_nodes = p.leaves + 1;
  std::vector<int> labels;
  for (int i = 1; i < p.label_space; ++i) labels.push_back(i);
  rng.shuffle(labels);
  labels.resize(p.leaves);
  t.children[0] = labels;
  return t;
}

namespace {

// Random derivation biased toward the target length.
void derive(Rng& rng, PegSymbol sym, int depth, int max_depth,
            std::vector<std::string>& out) {
  bool deep = depth >= max_depth;
  switch (sym) {
    case PegSymbol::expr:
      derive(rng, PegSymbol::term, depth + 1, max_depth, out);
      derive(rng, PegSymbol::expr_tail, depth + 1, max_depth, out);
      break;
    case PegSymbol::expr_tail:
      if (!deep && rng.uniform() < 0.4) {
        out.push_back("+");
        derive(rng, PegSymbol::expr, depth + 1, max_depth, out);
      }
      break;
    case PegSymbol::term:
      derive(rng, PegSymbol::factor, depth + 1, max_depth, out);
      derive(rng, PegSymbol::term_tail, depth + 1, max_depth, out);
      break;
    case PegSymbol::term_tail:
      if (!deep && rng.uniform() < 0.3) {
        out.push_back("*");
        derive(rng, PegSymbol::term, depth + 1, max_depth, out);
      }
      break;
    case PegSymbol::factor: {
      double u = deep ? 1.0 : rng.uniform();
      if (u < 0.25) {
        out.push_back("(");
        derive(rng, PegSymbol::expr, depth + 1, max_depth, out);
        out.push_back(")");
      } else if (u < 0.6) {
        out.push_back("NUM");
        out.push_back("NUM");
      } else {
        out.push_back("NUM");
      }
      break;
    }
  }
}

}  // namespace

PegTask generate_peg(const PegGenParams& p, uint64_t seed) {
  if (p.target_length < 1) throw InvalidParams("peg target length");
  PegTask best;
  int best_gap = 1 << 30;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Rng rng(Rng::mix(seed) ^ Rng::mix(0xbe9 + attempt));
    PegTask t;
    derive(rng, PegSymbol::expr, 0, p.max_depth, t.input);
    int gap = std::abs(static_cast<int>(t.input.size()) - p.target_length);
    if (gap < best_gap) {
      best_gap = gap;
      best = t;
    }
    if (gap == 0) break;
  }
  return best;
}

}  // namespace ssalab::domains
