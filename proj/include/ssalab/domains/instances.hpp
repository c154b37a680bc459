#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ssalab::domains {

// A signed literal: +v encoded as (v+1), -v as -(v+1), variables 0-based.
using Lit = int;

inline int lit_var(Lit l) { return (l > 0 ? l : -l) - 1; }
inline bool lit_sign(Lit l) { return l > 0; }  // true = positive
inline Lit make_lit(int var, bool positive) {
  return positive ? var + 1 : -(var + 1);
}

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;

  std::string to_dimacs() const;
  static Cnf from_dimacs(const std::string& text);
};

struct Graph {
  int num_nodes = 0;
  int num_colors = 0;
  std::set<std::pair<int, int>> edges;  // pairs with first < second

  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  std::vector<int> neighbors(int node) const;

  std::string to_edge_list() const;
  static Graph from_edge_list(const std::string& text);
};

struct Tree {
  int num_nodes = 0;
  int root = 0;
  std::map<int, std::vector<int>> children;  // ordered child lists

  std::vector<int> node_ids() const;
  std::optional<int> parent_of(int node) const;

  std::string to_paren_list() const;
  static Tree from_paren_list(const std::string& text);
};

enum class PegSymbol { expr, expr_tail, term, term_tail, factor };

// Fixed ambiguous expression grammar. NUM NUM as a Factor alternative forces
// backtracking on inputs a committed choice would otherwise fail.
//
//   Expr     <- Term ExprTail        ExprTail <- '+' Expr | eps
//   Term     <- Factor TermTail      TermTail <- '*' Term | eps
//   Factor   <- '(' Expr ')' | NUM | NUM NUM
struct PegTask {
  std::vector<std::string> input;  // tokens over {NUM, +, *, (, )}

  static const std::vector<std::string>& terminals();
};

}  // namespace ssalab::domains
