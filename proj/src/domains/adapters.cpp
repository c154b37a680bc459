#include "ssalab/domains/adapters.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "ssalab/util/errors.hpp"

namespace ssalab::domains {

using search::Action;
using search::Conflict;
using search::Evidence;
using search::PropResult;
using search::SearchState;

// ---------------------------------------------------------------- SAT

SatAdapter::ClauseView SatAdapter::view(const SearchState& s,
                                        size_t ci) const {
  ClauseView v{0, 0, 0};
  bool sat = false;
  for (Lit l : cnf_.clauses[ci]) {
    auto it = s.assignment.find(lit_var(l));
    if (it == s.assignment.end()) {
      ++v.unassigned;
      v.unit_lit = l;
    } else if (it->second == (lit_sign(l) ? 1 : 0)) {
      sat = true;
    }
  }
  if (sat)
    v.status = 1;
  else
    v.status = (v.unassigned == 0) ? 0 : 2;
  return v;
}

PropResult SatAdapter::propagate(SearchState& s, int level) const {
  PropResult pr;
  // scan clauses in index order; apply the first unit found and restart;
  // stop at the first falsified clause
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ci = 0; ci < cnf_.clauses.size(); ++ci) {
      ClauseView v = view(s, ci);
      if (v.status == 0) {
        s.conflict = Conflict{static_cast<int>(ci)};
        return pr;
      }
      if (v.status == 2 && v.unassigned == 1) {
        int var = lit_var(v.unit_lit);
        int val = lit_sign(v.unit_lit) ? 1 : 0;
        s.assignment[var] = val;
        s.trail.push_back({var, val, level, true});
        s.domains.erase(var);
        pr.forced.emplace_back(var, val);
        changed = true;
        break;
      }
    }
  }
  s.conflict.reset();
  return pr;
}

void SatAdapter::refresh(SearchState& s) const {
  s.domains.clear();
  for (int v = 0; v < cnf_.num_vars; ++v)
    if (!s.assigned(v)) s.domains[v] = {0, 1};
  s.conflict.reset();
  for (size_t ci = 0; ci < cnf_.clauses.size(); ++ci)
    if (view(s, ci).status == 0) {
      s.conflict = Conflict{static_cast<int>(ci)};
      break;
    }
}

bool SatAdapter::goal_reached(const SearchState& s) const {
  for (size_t ci = 0; ci < cnf_.clauses.size(); ++ci)
    if (view(s, ci).status != 1) return false;
  return true;
}

Evidence SatAdapter::inspect(const SearchState& s) const {
  Evidence ev;
  int target = -1;
  if (s.conflict) {
    target = s.conflict->id;
    ev.verdict = Evidence::Verdict::conflict;
  } else {
    // the most constrained open clause, lowest index on ties
    int best_unassigned = 1 << 30;
    for (size_t ci = 0; ci < cnf_.clauses.size(); ++ci) {
      ClauseView v = view(s, ci);
      if (v.status != 2) continue;
      if (v.unassigned < best_unassigned) {
        best_unassigned = v.unassigned;
        target = static_cast<int>(ci);
      }
    }
    ev.verdict = (target >= 0 && best_unassigned == 1)
                     ? Evidence::Verdict::unit
                     : Evidence::Verdict::sat_ok;
  }
  ev.inspected_id = target;
  if (target >= 0) {
    for (Lit l : cnf_.clauses[target]) {
      auto it = s.assignment.find(lit_var(l));
      int truth = 2;
      if (it != s.assignment.end())
        truth = (it->second == (lit_sign(l) ? 1 : 0)) ? 1 : 0;
      ev.literals.emplace_back(l, truth);
    }
  }
  return ev;
}

std::set<int> SatAdapter::conflict_levels(const SearchState& s,
                                          const Conflict& c) const {
  std::set<int> levels;
  if (c.id < 0 || c.id >= static_cast<int>(cnf_.clauses.size())) return levels;
  for (Lit l : cnf_.clauses[c.id]) {
    int var = lit_var(l);
    for (const auto& e : s.trail)
      if (e.var == var) {
        levels.insert(e.level);
        break;
      }
  }
  return levels;
}

std::vector<int> SatAdapter::assignment_vector(const SearchState& s) const {
  std::vector<int> a(cnf_.num_vars, -1);
  for (const auto& [v, val] : s.assignment) a[v] = val;
  return a;
}

// ---------------------------------------------------------------- GC

GcAdapter::GcAdapter(Graph g) : g_(std::move(g)) {
  adj_.assign(g_.num_nodes, {});
  for (const auto& [a, b] : g_.edges) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& v : adj_) std::sort(v.begin(), v.end());
}

unsigned GcAdapter::color_mask(const SearchState& s, int node) const {
  unsigned mask = (1u << g_.num_colors) - 1;
  for (int nb : adj_[node]) {
    auto it = s.assignment.find(nb);
    if (it != s.assignment.end()) mask &= ~(1u << it->second);
  }
  return mask;
}

PropResult GcAdapter::propagate(SearchState& s, int /*level*/) const {
  refresh(s);
  return {};
}

void GcAdapter::refresh(SearchState& s) const {
  s.domains.clear();
  s.conflict.reset();
  for (int n = 0; n < g_.num_nodes; ++n) {
    if (s.assigned(n)) continue;
    std::set<int> dom;
    unsigned mask = color_mask(s, n);
    for (int c = 0; c < g_.num_colors; ++c)
      if (mask & (1u << c)) dom.insert(c);
    if (dom.empty() && !s.conflict) s.conflict = Conflict{n};
    s.domains[n] = std::move(dom);
  }
}

bool GcAdapter::goal_reached(const SearchState& s) const {
  return static_cast<int>(s.assignment.size()) == g_.num_nodes;
}

Evidence GcAdapter::inspect(const SearchState& s) const {
  Evidence ev;
  if (s.conflict) {
    ev.verdict = Evidence::Verdict::conflict;
    ev.inspected_id = s.conflict->id;
  } else {
    ev.verdict = Evidence::Verdict::sat_ok;
  }
  return ev;
}

std::set<int> GcAdapter::conflict_levels(const SearchState& s,
                                         const Conflict& c) const {
  std::set<int> levels;
  if (c.id < 0 || c.id >= g_.num_nodes) return levels;
  for (int nb : adj_[c.id]) {
    if (!s.assigned(nb)) continue;
    for (const auto& e : s.trail)
      if (e.var == nb) {
        levels.insert(e.level);
        break;
      }
  }
  return levels;
}

// ---------------------------------------------------------------- Tree

std::vector<int> TreeAdapter::visits(const SearchState& s) const {
  std::vector<int> seq;
  for (const auto& e : s.trail) seq.push_back(e.value);
  return seq;
}

std::set<int> TreeAdapter::legal_next(const std::vector<int>& visited) const {
  std::set<int> seen(visited.begin(), visited.end());
  std::vector<int> stack;
  auto unvisited_children = [&](int node) {
    std::set<int> out;
    auto it = tree_.children.find(node);
    if (it == tree_.children.end()) return out;
    for (int c : it->second)
      if (!seen.count(c)) out.insert(c);
    return out;
  };
  for (int v : visited) {
    stack.push_back(v);
    while (!stack.empty() && unvisited_children(stack.back()).empty())
      stack.pop_back();
  }
  if (stack.empty()) return {};
  return unvisited_children(stack.back());
}

PropResult TreeAdapter::propagate(SearchState& s, int level) const {
  PropResult pr;
  if (s.assignment.empty()) {
    s.assignment[0] = tree_.root;  // the traversal always starts at the root
    s.trail.push_back({0, tree_.root, level, true});
    pr.forced.emplace_back(0, tree_.root);
  }
  refresh(s);
  return pr;
}

void TreeAdapter::refresh(SearchState& s) const {
  s.domains.clear();
  s.conflict.reset();
  int t = static_cast<int>(s.assignment.size());
  if (t >= tree_.num_nodes) return;
  auto next = legal_next(visits(s));
  if (!next.empty()) s.domains[t] = std::move(next);
}

bool TreeAdapter::goal_reached(const SearchState& s) const {
  return static_cast<int>(s.assignment.size()) == tree_.num_nodes;
}

Evidence TreeAdapter::inspect(const SearchState&) const {
  Evidence ev;
  ev.verdict = Evidence::Verdict::sat_ok;
  return ev;
}

// ---------------------------------------------------------------- PEG

namespace {

const char* symbol_name(PegSymbol s) {
  switch (s) {
    case PegSymbol::expr: return "Expr";
    case PegSymbol::expr_tail: return "ExprTail";
    case PegSymbol::term: return "Term";
    case PegSymbol::term_tail: return "TermTail";
    case PegSymbol::factor: return "Factor";
  }
  return "?";
}

bool is_nonterminal(const std::string& sym) {
  return sym == "Expr" || sym == "ExprTail" || sym == "Term" ||
         sym == "TermTail" || sym == "Factor";
}

// Ordered alternatives; empty vector = epsilon.
std::vector<std::vector<std::string>> alternatives(const std::string& sym) {
  if (sym == "ExprTail") return {{"+", "Expr"}, {}};
  if (sym == "TermTail") return {{"*", "Term"}, {}};
  if (sym == "Factor") return {{"(", "Expr", ")"}, {"NUM"}, {"NUM", "NUM"}};
  return {};
}

}  // namespace

PegAdapter::Replay PegAdapter::replay(const SearchState& s) const {
  Replay r;
  r.stack = {"Expr"};
  r.cursor = 0;
  int choice = 0;
  while (!r.stack.empty()) {
    std::string top = r.stack.back();
    r.stack.pop_back();
    if (!is_nonterminal(top)) {
      if (r.cursor < task_.input.size() && task_.input[r.cursor] == top) {
        ++r.cursor;
        continue;
      }
      r.status = Replay::Status::fail;
      return r;
    }
    if (top == "Expr") {
      r.stack.push_back("ExprTail");
      r.stack.push_back("Term");
      continue;
    }
    if (top == "Term") {
      r.stack.push_back("TermTail");
      r.stack.push_back("Factor");
      continue;
    }
    // choice point
    auto alts = alternatives(top);
    auto it = s.assignment.find(choice);
    if (it == s.assignment.end()) {
      r.status = Replay::Status::need_choice;
      r.next_choice = choice;
      r.alternatives = static_cast<int>(alts.size());
      r.pending_rule = top == "ExprTail"  ? PegSymbol::expr_tail
                       : top == "TermTail" ? PegSymbol::term_tail
                                           : PegSymbol::factor;
      r.stack.push_back(top);
      return r;
    }
    const auto& chosen = alts[static_cast<size_t>(it->second)];
    for (auto rit = chosen.rbegin(); rit != chosen.rend(); ++rit)
      r.stack.push_back(*rit);
    ++choice;
  }
  if (r.cursor == task_.input.size()) {
    r.status = Replay::Status::success;
  } else {
    r.status = Replay::Status::fail;  // trailing input unconsumed
  }
  return r;
}

PropResult PegAdapter::propagate(SearchState& s, int /*level*/) const {
  refresh(s);
  return {};
}

void PegAdapter::refresh(SearchState& s) const {
  s.domains.clear();
  s.conflict.reset();
  Replay r = replay(s);
  if (r.status == Replay::Status::fail) {
    s.conflict = Conflict{static_cast<int>(r.cursor)};
    return;
  }
  if (r.status == Replay::Status::need_choice) {
    std::set<int> dom;
    for (int a = 0; a < r.alternatives; ++a) dom.insert(a);
    s.domains[r.next_choice] = std::move(dom);
  }
}

bool PegAdapter::goal_reached(const SearchState& s) const {
  return replay(s).status == Replay::Status::success;
}

Evidence PegAdapter::inspect(const SearchState& s) const {
  Evidence ev;
  Replay r = replay(s);
  ev.inspected_id = static_cast<int>(r.cursor);
  ev.verdict = (r.status == Replay::Status::fail)
                   ? Evidence::Verdict::conflict
                   : Evidence::Verdict::sat_ok;
  return ev;
}

// ---------------------------------------------------------------- policies

namespace {

// occurrence counts restricted to open clauses: [var][polarity]
std::vector<std::array<int, 2>> open_occurrences(const Cnf& cnf,
                                                 const SearchState& s) {
  std::vector<std::array<int, 2>> occ(cnf.num_vars, {0, 0});
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (Lit l : clause) {
      auto it = s.assignment.find(lit_var(l));
      if (it != s.assignment.end() && it->second == (lit_sign(l) ? 1 : 0)) {
        sat = true;
        break;
      }
    }
    if (sat) continue;
    for (Lit l : clause)
      if (!s.assigned(lit_var(l))) ++occ[lit_var(l)][lit_sign(l) ? 1 : 0];
  }
  return occ;
}

}  // namespace

Action OccurrenceDomainPolicy::propose(const SearchState& s,
                                       const search::DomainAdapter&,
                                       const search::RetryInfo* retry,
                                       int /*attempt*/, Rng&) {
  auto occ = open_occurrences(*cnf_, s);
  if (retry && !retry->untried.empty()) {
    // prefer the majority polarity among the untried values
    int var = retry->decision_var;
    int best_val = *retry->untried.begin();
    int best_score = -1;
    for (int v : retry->untried)
      if (occ[var][v] > best_score) {
        best_score = occ[var][v];
        best_val = v;
      }
    return Action::branch(var, best_val);
  }
  int best_var = -1, best_score = -1;
  for (const auto& [v, dom] : s.domains) {
    if (dom.empty()) continue;
    int score = occ[v][0] + occ[v][1];
    if (score > best_score) {
      best_score = score;
      best_var = v;
    }
  }
  if (best_var < 0) throw InadmissibleAction("no admissible branch");
  int val = occ[best_var][1] >= occ[best_var][0] ? 1 : 0;
  return Action::branch(best_var, val);
}

void VsidsDomainPolicy::bump_clause(const std::vector<Lit>& clause) {
  for (double& a : activity_) a *= 0.95;
  for (Lit l : clause) activity_[lit_var(l)] += 1.0;
}

Action VsidsDomainPolicy::propose(const SearchState& s,
                                  const search::DomainAdapter&,
                                  const search::RetryInfo* retry,
                                  int /*attempt*/, Rng&) {
  auto occ = open_occurrences(*cnf_, s);
  if (retry && !retry->untried.empty()) {
    int var = retry->decision_var;
    int best_val = *retry->untried.begin();
    int best_score = -1;
    for (int v : retry->untried)
      if (occ[var][v] > best_score) {
        best_score = occ[var][v];
        best_val = v;
      }
    return Action::branch(var, best_val);
  }
  int best_var = -1;
  double best_score = -1.0;
  for (const auto& [v, dom] : s.domains) {
    if (dom.empty()) continue;
    double score = activity_[v] + 1e-3 * (occ[v][0] + occ[v][1]);
    if (score > best_score) {
      best_score = score;
      best_var = v;
    }
  }
  if (best_var < 0) throw InadmissibleAction("no admissible branch");
  int val = occ[best_var][1] >= occ[best_var][0] ? 1 : 0;
  return Action::branch(best_var, val);
}

Action MinDomainPolicy::propose(const SearchState& s,
                                const search::DomainAdapter&,
                                const search::RetryInfo* retry,
                                int /*attempt*/, Rng&) {
  if (retry && !retry->untried.empty())
    return Action::branch(retry->decision_var, *retry->untried.begin());
  int best_var = -1;
  size_t best_size = SIZE_MAX;
  for (const auto& [v, dom] : s.domains) {
    if (dom.empty()) continue;
    if (dom.size() < best_size) {
      best_size = dom.size();
      best_var = v;
    }
  }
  if (best_var < 0) throw InadmissibleAction("no admissible branch");
  return Action::branch(best_var, *s.domains.at(best_var).begin());
}

}  // namespace ssalab::domains
