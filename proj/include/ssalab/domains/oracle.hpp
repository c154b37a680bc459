#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssalab/domains/instances.hpp"

namespace ssalab::domains {

struct OracleVerdict {
  bool satisfiable = false;
  std::vector<int> witness;  // full assignment when satisfiable (0/1 per var)
  int64_t nodes = 0;         // search nodes used by the complete search
};

struct OracleLimits {
  int64_t node_cap = 50'000'000;
};

// Complete DPLL over the CNF; `fixed` holds a partial assignment (-1 = free).
// Throws ResourceLimit when the node cap is exceeded.
OracleVerdict oracle_solve(const Cnf& cnf, const std::vector<int>& fixed,
                           const OracleLimits& limits = {});
OracleVerdict oracle_solve(const Cnf& cnf, const OracleLimits& limits = {});

// Viability of a partial assignment: satisfiable restricted to extensions.
bool state_viable(const Cnf& cnf, const std::vector<int>& fixed,
                  const OracleLimits& limits = {});

// Bounded refutation from a partial assignment. Returns true only when the
// subtree is proven unsatisfiable within `conflict_budget` conflicts; a viable
// state can never be reported dead.
bool probe_dead(const Cnf& cnf, const std::vector<int>& fixed,
                int64_t conflict_budget);

// Complete graph-coloring search; `fixed` uses -1 for uncolored nodes.
OracleVerdict oracle_solve_gc(const Graph& g, const std::vector<int>& fixed,
                              const OracleLimits& limits = {});
OracleVerdict oracle_solve_gc(const Graph& g, const OracleLimits& limits = {});

// Reference recursive-descent parse with full backtracking across ordered
// alternatives; succeeds iff the whole input is consumed by Expr.
bool peg_reference_parse(const PegTask& task);

}  // namespace ssalab::domains
