#pragma once

#include <memory>

#include "ssalab/domains/instances.hpp"
#include "ssalab/search/adapter.hpp"
#include "ssalab/search/engine.hpp"

namespace ssalab::domains {

// 3-SAT: values 0 = false, 1 = true. Unit propagation to fixpoint; the first
// falsified clause in scan order is reported and forcing stops there.
class SatAdapter : public search::DomainAdapter {
public:
  explicit SatAdapter(Cnf cnf) : cnf_(std::move(cnf)) {}

  std::string domain_name() const override { return "sat"; }
  search::PropResult propagate(search::SearchState& s, int level) const override;
  void refresh(search::SearchState& s) const override;
  bool goal_reached(const search::SearchState& s) const override;
  search::Evidence inspect(const search::SearchState& s) const override;
  std::set<int> conflict_levels(const search::SearchState& s,
                                const search::Conflict& c) const override;

  const Cnf& cnf() const { return cnf_; }
  std::vector<int> assignment_vector(const search::SearchState& s) const;

private:
  Cnf cnf_;
  // clause status under the state's assignment: 1 satisfied, 0 falsified,
  // 2 open; plus unassigned count and last unassigned literal
  struct ClauseView {
    int status;
    int unassigned;
    Lit unit_lit;
  };
  ClauseView view(const search::SearchState& s, size_t ci) const;
};

// Graph coloring: values are colors 0..k-1. Propagation maintains open-node
// domains (neighbor colors removed); conflict on the first wiped domain.
class GcAdapter : public search::DomainAdapter {
public:
  explicit GcAdapter(Graph g);

  std::string domain_name() const override { return "gc"; }
  search::PropResult propagate(search::SearchState& s, int level) const override;
  void refresh(search::SearchState& s) const override;
  bool goal_reached(const search::SearchState& s) const override;
  search::Evidence inspect(const search::SearchState& s) const override;
  std::set<int> conflict_levels(const search::SearchState& s,
                                const search::Conflict& c) const override;

  const Graph& graph() const { return g_; }
  const std::vector<int>& neighbors(int node) const { return adj_[node]; }
  // available-color bitmask, bit j = color j legal at `node`
  unsigned color_mask(const search::SearchState& s, int node) const;

private:
  Graph g_;
  std::vector<std::vector<int>> adj_;
};

// Depth-first tree traversal as search: variable t is the t-th visit, values
// are node ids, the root visit is forced. Branching picks which unvisited
// child of the active node to visit next. No propagation, no conflicts.
class TreeAdapter : public search::DomainAdapter {
public:
  explicit TreeAdapter(Tree t) : tree_(std::move(t)) {}

  std::string domain_name() const override { return "tree"; }
  search::PropResult propagate(search::SearchState& s, int level) const override;
  void refresh(search::SearchState& s) const override;
  bool goal_reached(const search::SearchState& s) const override;
  search::Evidence inspect(const search::SearchState& s) const override;
  std::set<int> conflict_levels(const search::SearchState&,
                                const search::Conflict&) const override {
    return {};
  }

  const Tree& tree() const { return tree_; }
  // visit order recorded in the state
  std::vector<int> visits(const search::SearchState& s) const;

private:
  Tree tree_;
  std::set<int> legal_next(const std::vector<int>& visited) const;
};

// Backtracking parse of the fixed expression grammar: variable k is the k-th
// choice point, values are alternative indices. Deterministic descent between
// choice points is replayed from the assignment; a match failure at the
// cursor is the conflict.
class PegAdapter : public search::DomainAdapter {
public:
  explicit PegAdapter(PegTask task) : task_(std::move(task)) {}

  std::string domain_name() const override { return "peg"; }
  search::PropResult propagate(search::SearchState& s, int level) const override;
  void refresh(search::SearchState& s) const override;
  bool goal_reached(const search::SearchState& s) const override;
  search::Evidence inspect(const search::SearchState& s) const override;
  std::set<int> conflict_levels(const search::SearchState&,
                                const search::Conflict&) const override {
    return {};
  }

  const PegTask& task() const { return task_; }

  struct Replay {
    enum class Status { need_choice, success, fail };
    Status status;
    size_t cursor = 0;
    int next_choice = -1;     // choice variable index awaiting a value
    int alternatives = 0;     // arity of the pending rule
    PegSymbol pending_rule = PegSymbol::expr;
    std::vector<std::string> stack;  // symbols still to process (top last)
  };
  Replay replay(const search::SearchState& s) const;

private:
  PegTask task_;
};

// --- SAT heuristic policies (rule-based baselines) ---

// Max occurrence count among open clauses; value = majority polarity.
class OccurrenceDomainPolicy : public search::Policy {
public:
  explicit OccurrenceDomainPolicy(const Cnf& cnf) : cnf_(&cnf) {}
  search::Action propose(const search::SearchState& s,
                         const search::DomainAdapter& adapter,
                         const search::RetryInfo* retry, int attempt,
                         Rng& rng) override;

private:
  const Cnf* cnf_;
};

// Conflict-bumped activity ordering with decay; occurrence fallback.
class VsidsDomainPolicy : public search::Policy {
public:
  explicit VsidsDomainPolicy(const Cnf& cnf)
      : cnf_(&cnf), activity_(cnf.num_vars, 0.0) {}
  search::Action propose(const search::SearchState& s,
                         const search::DomainAdapter& adapter,
                         const search::RetryInfo* retry, int attempt,
                         Rng& rng) override;
  void bump_clause(const std::vector<Lit>& clause);

private:
  const Cnf* cnf_;
  std::vector<double> activity_;
};

// Smallest-domain-first over the generic domain map; value = lowest legal.
class MinDomainPolicy : public search::Policy {
public:
  search::Action propose(const search::SearchState& s,
                         const search::DomainAdapter& adapter,
                         const search::RetryInfo* retry, int attempt,
                         Rng& rng) override;
};

}  // namespace ssalab::domains
