#include "ssalab/domains/instances.hpp"

#include <algorithm>
#include <sstream>

#include "ssalab/util/errors.hpp"

namespace ssalab::domains {

std::string Cnf::to_dimacs() const {
  std::ostringstream os;
  os << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (Lit l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

Cnf Cnf::from_dimacs(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Cnf cnf;
  int num_clauses = -1;
  while (is >> tok) {
    if (tok == "c") {
      std::string rest;
      std::getline(is, rest);
    } else if (tok == "p") {
      std::string fmt;
      is >> fmt >> cnf.num_vars >> num_clauses;
      if (fmt != "cnf") throw InvalidParams("dimacs header format " + fmt);
    } else {
      int l = std::stoi(tok);
      if (cnf.clauses.empty()) cnf.clauses.emplace_back();
      if (l == 0) {
        cnf.clauses.emplace_back();
      } else {
        cnf.clauses.back().push_back(l);
      }
    }
  }
  while (!cnf.clauses.empty() && cnf.clauses.back().empty())
    cnf.clauses.pop_back();
  if (num_clauses >= 0 && static_cast<int>(cnf.clauses.size()) != num_clauses)
    throw InvalidParams("dimacs clause count mismatch");
  return cnf;
}

void Graph::add_edge(int a, int b) {
  if (a == b) throw InvalidParams("self loop");
  if (a > b) std::swap(a, b);
  edges.insert({a, b});
}

bool Graph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return edges.count({a, b}) > 0;
}

std::vector<int> Graph::neighbors(int node) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == node) out.push_back(b);
    if (b == node) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Graph::to_edge_list() const {
  std::ostringstream os;
  os << num_nodes << ' ' << num_colors << '\n';
  for (const auto& [a, b] : edges) os << a << ' ' << b << '\n';
  return os.str();
}

Graph Graph::from_edge_list(const std::string& text) {
  std::istringstream is(text);
  Graph g;
  if (!(is >> g.num_nodes >> g.num_colors))
    throw InvalidParams("bad graph header");
  int a, b;
  while (is >> a >> b) g.add_edge(a, b);
  return g;
}

std::vector<int> Tree::node_ids() const {
  std::vector<int> ids;
  ids.push_back(root);
  for (size_t i = 0; i < ids.size(); ++i) {
    auto it = children.find(ids[i]);
    if (it == children.end()) continue;
    for (int c : it->second) ids.push_back(c);
  }
  return ids;
}

std::optional<int> Tree::parent_of(int node) const {
  for (const auto& [p, kids] : children)
    for (int c : kids)
      if (c == node) return p;
  return std::nullopt;
}

namespace {

void write_subtree(std::ostringstream& os, const Tree& t, int node) {
  os << "( " << node << ' ';
  auto it = t.children.find(node);
  if (it != t.children.end())
    for (int c : it->second) write_subtree(os, t, c);
  os << ") ";
}

}  // namespace

std::string Tree::to_paren_list() const {
  std::ostringstream os;
  write_subtree(os, *this, root);
  return os.str();
}

Tree Tree::from_paren_list(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  Tree tree;
  std::vector<int> stack;
  size_t i = 0;
  bool saw_root = false;
  while (i < toks.size()) {
    if (toks[i] == "(") {
      ++i;
      if (i >= toks.size()) throw InvalidParams("truncated tree text");
      int node = std::stoi(toks[i++]);
      if (!saw_root) {
        tree.root = node;
        saw_root = true;
      } else {
        tree.children[stack.back()].push_back(node);
      }
      stack.push_back(node);
      ++tree.num_nodes;
    } else if (toks[i] == ")") {
      if (stack.empty()) throw InvalidParams("unbalanced tree text");
      stack.pop_back();
      ++i;
    } else {
      throw InvalidParams("unexpected tree token " + toks[i]);
    }
  }
  if (!stack.empty()) throw InvalidParams("unbalanced tree text");
  return tree;
}

const std::vector<std::string>& PegTask::terminals() {
  static const std::vector<std::string> kTerminals = {"NUM", "+", "*", "(",
                                                      ")"};
  return kTerminals;
}

}  // namespace ssalab::domains
