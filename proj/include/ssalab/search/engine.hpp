#pragma once

#include <functional>
#include <memory>

#include "ssalab/search/adapter.hpp"
#include "ssalab/search/types.hpp"
#include "ssalab/util/rng.hpp"

namespace ssalab::search {

inline constexpr int kExhausted = -1;  // backjump sentinel

struct RetryInfo {
  Var decision_var = -1;
  std::set<Value> untried;  // against the level's entry domain
};

class Policy {
public:
  virtual ~Policy() = default;
  // `retry` is non-null when the next branch re-decides a backtracked level.
  // `attempt` counts lenient-mode retries for this decision point (0-based).
  virtual Action propose(const SearchState& s, const DomainAdapter& adapter,
                         const RetryInfo* retry, int attempt, Rng& rng) = 0;
};

class Verifier {
public:
  virtual ~Verifier() = default;
  virtual bool backtrack_on(const SearchState& s,
                            const DomainAdapter& adapter) = 0;
  // Proactive verifiers may prune conflict-free states (threshold lab);
  // reactive ones act only on exposed conflicts.
  virtual bool is_proactive() const { return false; }
};

// Backtrack exactly on exposed contradictions; the reactive target rule.
class OracleReactiveVerifier : public Verifier {
public:
  bool backtrack_on(const SearchState& s, const DomainAdapter&) override {
    return s.conflict.has_value();
  }
};

struct RunConfig {
  int64_t token_budget = 4096;
  bool chronological_only = false;  // disable conflict-driven targeting
  bool lenient = false;             // resample illegal/repeat proposals
  bool record_events = true;
  int64_t node_cap = 10'000'000;  // hard safety cap on engine iterations
};

// Per-episode observer hook; threshold-lab instrumentation attaches here.
struct QueryObserver {
  virtual ~QueryObserver() = default;
  virtual void on_query(const SearchState& s, bool verdict_backtrack) = 0;
};

// Admissibility of a single action in the given state.
bool action_admissible(const SearchState& s, const Action& a);

// Single engine transition. Branch: assign, propagate, record evidence.
// Backtrack: compute the backjump target, pop the trail, mark tried,
// restore domains. Throws InadmissibleAction on precondition violations.
StepEvent step(SearchState& s, const Action& a, const DomainAdapter& adapter,
               bool chronological_only = false);

// Deepest level <= current with an untried value among the conflict's
// participating decisions, with accumulated-evidence recursion when those
// levels are exhausted; chronological fallback; kExhausted when nothing
// qualifies. Mutates accumulated conflict sets on the chosen level.
int backjump_target(SearchState& s, const DomainAdapter& adapter,
                    const std::optional<Conflict>& conflict,
                    bool chronological_only);

struct RunResult {
  EpisodeResult episode;
  std::vector<StepEvent> events;
};

// Depth-first search driven by `policy` and `verifier` under a token budget.
// Deterministic given (adapter instance, policy, verifier, rng seed).
RunResult run_search(const DomainAdapter& adapter, Policy& policy,
                     Verifier& verifier, const RunConfig& cfg, Rng rng,
                     bool known_satisfiable = true,
                     QueryObserver* observer = nullptr);

// Replays events through step() from the empty state; returns false on the
// first divergence from the recorded snapshots.
bool replay_matches(const DomainAdapter& adapter,
                    const std::vector<StepEvent>& events,
                    bool chronological_only = false);

// --- generic policies ---

// Lowest-index unassigned variable; complete. Values descend by default
// (true before false on SAT); PEG ordered choice wants ascending.
class ExhaustivePolicy : public Policy {
public:
  explicit ExhaustivePolicy(bool high_value_first = true)
      : high_first_(high_value_first) {}
  Action propose(const SearchState& s, const DomainAdapter& adapter,
                 const RetryInfo* retry, int attempt, Rng& rng) override;

private:
  bool high_first_;
};

// Uniform over admissible (variable, value) pairs; retries stay on the
// pending decision variable so the search remains systematic.
class RandomPolicy : public Policy {
public:
  Action propose(const SearchState& s, const DomainAdapter& adapter,
                 const RetryInfo* retry, int attempt, Rng& rng) override;
};

}  // namespace ssalab::search
