#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ssalab::search {

using Var = int;
using Value = int;

struct Action {
  enum class Kind { branch, backtrack };
  Kind kind = Kind::branch;
  Var var = -1;
  Value value = -1;

  static Action branch(Var v, Value val) {
    return {Kind::branch, v, val};
  }
  static Action backtrack() { return {Kind::backtrack, -1, -1}; }

  bool operator==(const Action&) const = default;
};

struct TrailEntry {
  Var var = -1;
  Value value = -1;
  int level = 0;
  bool forced = false;  // propagated entries carry the triggering level

  bool operator==(const TrailEntry&) const = default;
};

// Domain-specific conflict handle: falsified clause (SAT), wiped node (GC),
// failing cursor (PEG).
struct Conflict {
  int id = -1;
  bool operator==(const Conflict&) const = default;
};

struct LevelInfo {
  Var decision_var = -1;
  std::set<Value> domain_at_entry;             // values available when opened
  std::set<std::pair<Var, Value>> tried;       // alternatives already popped
  std::set<int> conflict_levels;               // accumulated backjump evidence

  bool operator==(const LevelInfo&) const = default;
};

// Inspected-record propagation evidence attached to each decision point.
struct Evidence {
  enum class Verdict { none, sat_ok, unit, conflict };
  Verdict verdict = Verdict::none;
  int inspected_id = -1;                      // clause / node / cursor
  std::vector<std::pair<int, int>> literals;  // SAT: (lit, truth 0=F 1=T 2=U)

  bool operator==(const Evidence&) const = default;
};

struct SearchState {
  std::map<Var, Value> assignment;
  std::map<Var, std::set<Value>> domains;  // unassigned variables only
  std::vector<TrailEntry> trail;
  std::map<int, LevelInfo> levels;  // keyed by decision level >= 1
  std::optional<Conflict> conflict;
  int level = 0;

  bool assigned(Var v) const { return assignment.count(v) > 0; }

  // Lexical assignment plus conflict flag and stack depth; keys the
  // per-state corruption draws and canonical-state grouping.
  std::string assignment_key() const {
    std::string k;
    for (const auto& [v, val] : assignment) {
      k += std::to_string(v);
      k += '=';
      k += std::to_string(val);
      k += ';';
    }
    k += conflict ? "C" : "-";
    k += '/';
    k += std::to_string(level);
    return k;
  }

  bool operator==(const SearchState&) const = default;
};

enum class Outcome { ok, conflict, solved, failed };

struct StepEvent {
  SearchState state_before;
  Action action;
  Evidence evidence;  // inspected record of state_before
  Outcome outcome = Outcome::ok;
  int backjump_level = -1;  // target for backtrack events
  std::vector<std::pair<Var, Value>> applied;  // branch plus forced entries
};

enum class Termination { solved, timeout, false_unsat, exhausted };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::solved: return "solved";
    case Termination::timeout: return "timeout";
    case Termination::false_unsat: return "false_unsat";
    case Termination::exhausted: return "exhausted";
  }
  return "?";
}

struct EpisodeResult {
  bool solved = false;
  int decisions = 0;
  int backtracks = 0;
  int64_t tokens_used = 0;
  Termination termination = Termination::timeout;
  // instrumentation
  int repeats = 0;
  int illegal = 0;
  int64_t verifier_queries = 0;
};

}  // namespace ssalab::search
