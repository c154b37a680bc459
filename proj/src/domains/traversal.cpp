#include "ssalab/domains/traversal.hpp"

#include <deque>

namespace ssalab::domains {

std::vector<int> reference_traversal(const Tree& t, TraversalOrder order) {
  std::vector<int> out;
  if (order == TraversalOrder::dfs) {
    std::vector<int> stack = {t.root};
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      out.push_back(node);
      auto it = t.children.find(node);
      if (it == t.children.end()) continue;
      for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit)
        stack.push_back(*rit);
    }
  } else {
    std::deque<int> queue = {t.root};
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      out.push_back(node);
      auto it = t.children.find(node);
      if (it == t.children.end()) continue;
      for (int c : it->second) queue.push_back(c);
    }
  }
  return out;
}

}  // namespace ssalab::domains
