#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpsat/cnf.hpp"

namespace bpsat {

// Edge polarity. 'positive'/'negated' mark how a variable occurs in a clause;
// 'parity' marks membership in an XOR constraint row. A graph never mixes
// parity with clause polarities.
enum class Polarity : std::uint8_t { positive, negated, parity };

struct Edge {
  int check = 0;  // 0-based check (clause / parity row) index
  int var = 0;    // 1-based variable index
  Polarity polarity = Polarity::positive;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Bipartite clause/variable graph. Edges live in a flat array with stable
// ids; per-node adjacency stores edge ids so message buffers can be indexed
// by edge id for double-buffered synchronous updates.
struct FactorGraph {
  int num_vars = 0;
  int num_checks = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> check_edges;  // [check] -> edge ids
  std::vector<std::vector<int>> var_edges;    // [var] -> edge ids, [0] unused

  bool parity() const {
    return !edges.empty() && edges[0].polarity == Polarity::parity;
  }
};

namespace detail {

inline void link_edges(FactorGraph& g) {
  g.check_edges.assign(g.num_checks, {});
  g.var_edges.assign(g.num_vars + 1, {});
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const Edge& e = g.edges[id];
    g.check_edges[e.check].push_back(static_cast<int>(id));
    g.var_edges[e.var].push_back(static_cast<int>(id));
  }
}

}  // namespace detail

// One check node per clause, one edge per literal carrying its polarity.
inline FactorGraph from_cnf(const CnfFormula& f) {
  if (f.clauses.empty())
    throw std::invalid_argument("from_cnf: formula has no clauses");
  FactorGraph g;
  g.num_vars = f.num_vars;
  g.num_checks = static_cast<int>(f.clauses.size());
  for (int c = 0; c < g.num_checks; ++c) {
    for (Literal lit : f.clauses[c]) {
      if (lit.var() > f.num_vars)
        throw std::invalid_argument("from_cnf: literal out of range");
      g.edges.push_back(
          {c, lit.var(),
           lit.positive() ? Polarity::positive : Polarity::negated});
    }
  }
  detail::link_edges(g);
  return g;
}

// Edge (i, j, parity) wherever h[i][j] = 1.
inline FactorGraph from_parity_matrix(const std::vector<std::vector<int>>& h) {
  if (h.empty() || h[0].empty())
    throw std::invalid_argument("from_parity_matrix: empty matrix");
  const std::size_t cols = h[0].size();
  FactorGraph g;
  g.num_checks = static_cast<int>(h.size());
  g.num_vars = static_cast<int>(cols);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].size() != cols)
      throw std::invalid_argument("from_parity_matrix: ragged matrix");
    bool any = false;
    for (std::size_t j = 0; j < cols; ++j) {
      if (h[i][j] == 0) continue;
      if (h[i][j] != 1)
        throw std::invalid_argument("from_parity_matrix: entries must be 0/1");
      g.edges.push_back(
          {static_cast<int>(i), static_cast<int>(j + 1), Polarity::parity});
      any = true;
    }
    if (!any)
      throw std::invalid_argument("from_parity_matrix: all-zero row " +
                                  std::to_string(i + 1));
  }
  detail::link_edges(g);
  return g;
}

// Reads the normalized clause list back out of a clause graph.
inline CnfFormula formula_of(const FactorGraph& g) {
  if (g.parity())
    throw std::invalid_argument("formula_of: parity graph has no clause view");
  CnfFormula f;
  f.num_vars = g.num_vars;
  f.clauses.resize(g.num_checks);
  for (const Edge& e : g.edges)
    f.clauses[e.check].emplace_back(e.var, e.polarity == Polarity::positive);
  return f;
}

}  // namespace bpsat
