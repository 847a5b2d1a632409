#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "bpsat/cnf.hpp"

namespace bpsat {

inline constexpr std::size_t kOracleMaxClauseLen = 10;

// Brute-force P(clause = 1 | fixed_var = fixed_value): enumerates every
// assignment of the clause's other variables, weighted as independent
// Bernoulli draws from q_true (variable -> P(v = 1)). Kept free of the
// product-form message rule on purpose; it is the independent oracle the
// clause-to-variable update is checked against.
inline double oracle_clause_marginal(const Clause& clause,
                                     const std::map<int, double>& q_true,
                                     int fixed_var, int fixed_value) {
  if (clause.size() > kOracleMaxClauseLen)
    throw std::invalid_argument("oracle_clause_marginal: clause too long");
  if (fixed_value != 0 && fixed_value != 1)
    throw std::invalid_argument("oracle_clause_marginal: fixed_value must be 0/1");
  bool fixed_in_clause = false;
  std::vector<int> others;
  for (Literal lit : clause) {
    if (lit.var() == fixed_var) {
      fixed_in_clause = true;
    } else {
      others.push_back(lit.var());
      if (!q_true.count(lit.var()))
        throw std::invalid_argument(
            "oracle_clause_marginal: missing q for variable " +
            std::to_string(lit.var()));
    }
  }
  if (!fixed_in_clause)
    throw std::invalid_argument(
        "oracle_clause_marginal: fixed variable not in clause");

  double p_sat = 0.0;
  const std::size_t k = others.size();
  for (std::size_t mask = 0; mask < (1ull << k); ++mask) {
    double weight = 1.0;
    for (std::size_t b = 0; b < k; ++b) {
      const double q1 = q_true.at(others[b]);
      weight *= (mask >> b & 1) ? q1 : 1.0 - q1;
    }
    bool sat = false;
    for (Literal lit : clause) {
      bool value;
      if (lit.var() == fixed_var) {
        value = fixed_value != 0;
      } else {
        std::size_t b = 0;
        while (others[b] != lit.var()) ++b;
        value = (mask >> b & 1) != 0;
      }
      if (value == lit.positive()) {
        sat = true;
        break;
      }
    }
    if (sat) p_sat += weight;
  }
  return p_sat;
}

}  // namespace bpsat
