#pragma once

#include <vector>

#include "ssalab/domains/instances.hpp"

namespace ssalab::domains {

enum class TraversalOrder { bfs, dfs };

// Ground-truth visit order: DFS preorder with stored child order, BFS level
// order.
std::vector<int> reference_traversal(const Tree& t, TraversalOrder order);

}  // namespace ssalab::domains
