#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssalab/search/types.hpp"

namespace ssalab::search {

struct PropResult {
  std::vector<std::pair<Var, Value>> forced;
  std::optional<Conflict> conflict;
};

// Bridge between the generic depth-first engine and a concrete domain.
// Adapters are stateless with respect to the search; all search state lives
// in SearchState so snapshots replay exactly.
class DomainAdapter {
public:
  virtual ~DomainAdapter() = default;

  virtual std::string domain_name() const = 0;

  // Run propagation to fixpoint from the current assignment. Forced
  // assignments are applied to the state (trail entries with forced=true at
  // `level`), domains are updated and state.conflict is set.
  virtual PropResult propagate(SearchState& s, int level) const = 0;

  // Recompute domains and conflict status from the assignment alone
  // (used after backtrack pops).
  virtual void refresh(SearchState& s) const = 0;

  virtual bool goal_reached(const SearchState& s) const = 0;

  // Inspected record for the decision point at state s.
  virtual Evidence inspect(const SearchState& s) const = 0;

  // Decision levels participating in the conflict (levels of the assigned
  // vars the conflict depends on). Empty set = chronological handling.
  virtual std::set<int> conflict_levels(const SearchState& s,
                                        const Conflict& c) const = 0;
};

}  // namespace ssalab::search
