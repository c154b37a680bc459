#pragma once

#include <cstdint>

#include "ssalab/domains/instances.hpp"
#include "ssalab/util/rng.hpp"

namespace ssalab::domains {

struct SatGenParams {
  int num_vars = 50;
  double clause_ratio = 4.0;  // clause-to-variable ratio
  bool planted = true;        // built around a sampled satisfying assignment
  bool filter_satisfiable = false;  // random mode: reject unsat via oracle
  int max_attempts = 50;
};

struct GcGenParams {
  int num_nodes = 30;
  double edge_prob = 0.35;
  int num_colors = 4;
};

struct TreeGenParams {
  int num_nodes = 20;  // branching factors drawn uniformly from {2,3,4}
};

struct StarGenParams {
  int leaves = 4;
  int label_space = 40;  // leaf ids drawn without replacement from [1, space)
};

struct PegGenParams {
  int target_length = 9;  // approximate token count
  int max_depth = 6;
};

Cnf generate_sat(const SatGenParams& p, uint64_t seed);
Graph generate_gc(const GcGenParams& p, uint64_t seed);
Tree generate_tree(const TreeGenParams& p, uint64_t seed);
Tree generate_star(const StarGenParams& p, uint64_t seed);
PegTask generate_peg(const PegGenParams& p, uint64_t seed);

// The planted assignment used for seed `seed` (exposed for tests).
std::vector<int> planted_assignment(int num_vars, uint64_t seed);

}  // namespace ssalab::domains
