#include "ssalab/search/engine.hpp"

#include <algorithm>

#include "ssalab/util/errors.hpp"

namespace ssalab::search {

namespace {

bool untried_alternative(const SearchState& s, int level) {
  auto it = s.levels.find(level);
  if (it == s.levels.end()) return false;
  const LevelInfo& li = it->second;
  for (Value v : li.domain_at_entry)
    if (!li.tried.count({li.decision_var, v})) return true;
  return false;
}

int chronological_target(const SearchState& s) {
  for (int l = s.level; l >= 1; --l)
    if (untried_alternative(s, l)) return l;
  return kExhausted;
}

void pop_to(SearchState& s, int target, const DomainAdapter& adapter) {
  LevelInfo& li = s.levels.at(target);
  for (const TrailEntry& e : s.trail)
    if (e.level == target && !e.forced) {
      li.tried.insert({e.var, e.value});
      break;
    }
  while (!s.trail.empty() && s.trail.back().level >= target) {
    s.assignment.erase(s.trail.back().var);
    s.trail.pop_back();
  }
  for (auto it = s.levels.upper_bound(target); it != s.levels.end();)
    it = s.levels.erase(it);
  s.level = target - 1;
  s.conflict.reset();
  adapter.refresh(s);
}

bool has_admissible_branch(const SearchState& s) {
  for (const auto& [v, dom] : s.domains)
    if (!dom.empty()) return true;
  return false;
}

}  // namespace

bool action_admissible(const SearchState& s, const Action& a) {
  if (a.kind == Action::Kind::branch) {
    if (s.assigned(a.var)) return false;
    auto it = s.domains.find(a.var);
    return it != s.domains.end() && it->second.count(a.value) > 0;
  }
  // backtrack: only when a conflict is exposed or all values are tried
  if (s.conflict) return true;
  return s.level >= 1 && !untried_alternative(s, s.level);
}

namespace {

int backjump_target_impl(SearchState& s, const DomainAdapter& adapter,
                         const std::optional<Conflict>& conflict,
                         bool chronological_only, bool commit) {
  if (chronological_only) return chronological_target(s);

  auto fallback = [&]() -> int {
    int t = chronological_target(s);
    if (t != kExhausted && commit) {
      // evidence-free jump; record conservative full involvement
      auto& cl = s.levels.at(t).conflict_levels;
      for (int l = 1; l < t; ++l) cl.insert(l);
    }
    return t;
  };

  if (!conflict) return fallback();

  std::set<int> involved = adapter.conflict_levels(s, *conflict);
  involved.erase(0);  // root-forced participation cannot be re-decided
  while (!involved.empty()) {
    int d = *involved.rbegin();
    involved.erase(d);
    if (d > s.level) continue;
    if (untried_alternative(s, d)) {
      if (commit) {
        auto& cl = s.levels.at(d).conflict_levels;
        for (int x : involved) cl.insert(x);
      }
      return d;
    }
    // exhausted level: absorb the evidence accumulated on it
    auto it = s.levels.find(d);
    if (it != s.levels.end())
      for (int x : it->second.conflict_levels)
        if (x < d) involved.insert(x);
  }
  return fallback();
}

StepEvent step_impl(SearchState& s, const Action& a,
                    const DomainAdapter& adapter, bool chronological_only,
                    bool with_snapshot, bool sanctioned_prune) {
  StepEvent ev;
  if (with_snapshot) ev.state_before = s;
  ev.action = a;
  ev.evidence = adapter.inspect(s);

  if (a.kind == Action::Kind::branch) {
    if (s.assigned(a.var))
      throw InadmissibleAction("variable already assigned");
    auto it = s.domains.find(a.var);
    if (it == s.domains.end() || !it->second.count(a.value))
      throw InadmissibleAction("value not in domain");
    int level = s.level + 1;
    LevelInfo& li = s.levels[level];
    if (li.decision_var < 0) {
      li.decision_var = a.var;
      li.domain_at_entry = it->second;
    }
    s.assignment[a.var] = a.value;
    s.trail.push_back({a.var, a.value, level, false});
    s.domains.erase(a.var);
    s.level = level;
    PropResult pr = adapter.propagate(s, level);
    ev.applied.emplace_back(a.var, a.value);
    for (const auto& f : pr.forced) ev.applied.push_back(f);
    if (s.conflict) {
      ev.outcome = Outcome::conflict;
      ev.backjump_level = backjump_target_impl(s, adapter, s.conflict,
                                               chronological_only,
                                               /*commit=*/false);
    } else {
      ev.outcome = adapter.goal_reached(s) ? Outcome::solved : Outcome::ok;
    }
    return ev;
  }

  if (!sanctioned_prune && !action_admissible(s, a))
    throw InadmissibleAction(
        "backtrack with no conflict and untried values remaining");
  int target =
      backjump_target_impl(s, adapter, s.conflict, chronological_only,
                           /*commit=*/true);
  ev.backjump_level = target;
  if (target == kExhausted) {
    ev.outcome = Outcome::failed;
    return ev;
  }
  ev.outcome = Outcome::conflict;
  pop_to(s, target, adapter);
  return ev;
}

}  // namespace

int backjump_target(SearchState& s, const DomainAdapter& adapter,
                    const std::optional<Conflict>& conflict,
                    bool chronological_only) {
  return backjump_target_impl(s, adapter, conflict, chronological_only,
                              /*commit=*/true);
}

StepEvent step(SearchState& s, const Action& a, const DomainAdapter& adapter,
               bool chronological_only) {
  return step_impl(s, a, adapter, chronological_only, /*with_snapshot=*/true,
                   /*sanctioned_prune=*/false);
}

RunResult run_search(const DomainAdapter& adapter, Policy& policy,
                     Verifier& verifier, const RunConfig& cfg, Rng rng,
                     bool known_satisfiable, QueryObserver* observer) {
  RunResult out;
  EpisodeResult& ep = out.episode;
  SearchState s;
  adapter.refresh(s);
  adapter.propagate(s, 0);

  auto consult = [&]() {
    ++ep.verifier_queries;
    bool v = verifier.backtrack_on(s, adapter);
    if (observer) observer->on_query(s, v);
    if (!s.conflict && !verifier.is_proactive()) {
      // Reactive scope: a backtrack verdict without an exposed conflict is a
      // policy error, never executed. Proactive sources (threshold lab) may
      // prune here.
      v = false;
    }
    return v;
  };

  if (!s.conflict && adapter.goal_reached(s)) {
    ep.solved = true;
    ep.termination = Termination::solved;
    return out;
  }
  bool pending_backtrack = consult();

  int64_t iters = 0;
  while (true) {
    if (++iters > cfg.node_cap) {
      ep.termination = Termination::timeout;
      break;
    }

    Action act;
    bool infra_forced = false;
    bool prune = false;
    if (s.conflict && !has_admissible_branch(s)) {
      act = Action::backtrack();  // leaf dead end, infrastructure-side
      infra_forced = true;
    } else if (pending_backtrack) {
      act = Action::backtrack();
      prune = !s.conflict;  // proactive prune on a conflict-free state
    } else {
      // propose a branch, with lenient-mode retries
      const int pending = s.level + 1;
      RetryInfo info;
      const RetryInfo* ri = nullptr;
      if (auto it = s.levels.find(pending); it != s.levels.end()) {
        info.decision_var = it->second.decision_var;
        for (Value v : it->second.domain_at_entry)
          if (!it->second.tried.count({info.decision_var, v}))
            info.untried.insert(v);
        if (!info.untried.empty()) ri = &info;
      }
      bool got = false;
      for (int attempt = 0; attempt < 4; ++attempt) {
        Action a = policy.propose(s, adapter, ri, attempt, rng);
        bool admissible = action_admissible(s, a);
        bool repeat = false;
        if (admissible && a.kind == Action::Kind::branch) {
          if (auto it = s.levels.find(pending); it != s.levels.end())
            repeat = it->second.tried.count({a.var, a.value}) > 0;
        }
        if (admissible && !repeat) {
          act = a;
          got = true;
          break;
        }
        if (!cfg.lenient) {
          if (!admissible)
            throw InadmissibleAction("policy proposed an inadmissible action");
          ++ep.repeats;  // strict mode executes repeats
          act = a;
          got = true;
          break;
        }
        if (!admissible)
          ++ep.illegal;
        else
          ++ep.repeats;
      }
      if (!got) {
        ep.termination = Termination::timeout;  // lenient retry cap
        break;
      }
    }

    // token budget: model-emitted tokens only; infra-forced pops are free
    int64_t cost = 0;
    if (!infra_forced) cost = (act.kind == Action::Kind::branch) ? 2 : 1;
    if (ep.tokens_used + cost > cfg.token_budget) {
      ep.termination = Termination::timeout;
      break;
    }
    ep.tokens_used += cost;

    StepEvent ev = step_impl(s, act, adapter, cfg.chronological_only,
                             cfg.record_events, prune || infra_forced);
    if (act.kind == Action::Kind::branch)
      ++ep.decisions;
    else
      ++ep.backtracks;
    if (cfg.record_events) out.events.push_back(std::move(ev));
    const Outcome outcome =
        cfg.record_events ? out.events.back().outcome : ev.outcome;

    if (outcome == Outcome::solved) {
      ep.solved = true;
      ep.termination = Termination::solved;
      break;
    }
    if (outcome == Outcome::failed) {
      ep.termination = known_satisfiable ? Termination::false_unsat
                                         : Termination::exhausted;
      break;
    }

    if (act.kind == Action::Kind::branch) {
      pending_backtrack = consult();  // fresh post-propagation state
    } else {
      pending_backtrack = false;  // restored states were queried already
    }
  }
  return out;
}

bool replay_matches(const DomainAdapter& adapter,
                    const std::vector<StepEvent>& events,
                    bool chronological_only) {
  SearchState s;
  adapter.refresh(s);
  adapter.propagate(s, 0);
  for (const auto& ev : events) {
    if (!(s == ev.state_before)) return false;
    StepEvent replayed = step_impl(s, ev.action, adapter, chronological_only,
                                   /*with_snapshot=*/false,
                                   /*sanctioned_prune=*/true);
    if (replayed.outcome != ev.outcome ||
        replayed.backjump_level != ev.backjump_level ||
        replayed.applied != ev.applied)
      return false;
  }
  return true;
}

Action ExhaustivePolicy::propose(const SearchState& s,
                                 const DomainAdapter& /*adapter*/,
                                 const RetryInfo* retry, int /*attempt*/,
                                 Rng& /*rng*/) {
  if (retry && !retry->untried.empty()) {
    Value v = high_first_ ? *retry->untried.rbegin() : *retry->untried.begin();
    return Action::branch(retry->decision_var, v);
  }
  for (const auto& [v, dom] : s.domains)
    if (!dom.empty())
      return Action::branch(v, high_first_ ? *dom.rbegin() : *dom.begin());
  throw InadmissibleAction("no admissible branch");
}

Action RandomPolicy::propose(const SearchState& s,
                             const DomainAdapter& /*adapter*/,
                             const RetryInfo* retry, int /*attempt*/,
                             Rng& rng) {
  if (retry && !retry->untried.empty()) {
    std::vector<Value> opts(retry->untried.begin(), retry->untried.end());
    return Action::branch(retry->decision_var, opts[rng.below(opts.size())]);
  }
  std::vector<Var> vars;
  for (const auto& [v, dom] : s.domains)
    if (!dom.empty()) vars.push_back(v);
  if (vars.empty()) throw InadmissibleAction("no admissible branch");
  Var v = vars[rng.below(vars.size())];
  const auto& dom = s.domains.at(v);
  std::vector<Value> vals(dom.begin(), dom.end());
  return Action::branch(v, vals[rng.below(vals.size())]);
}

}  // namespace ssalab::search
