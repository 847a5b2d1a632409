#pragma once

#include <stdexcept>

#include "bpsat/cnf.hpp"
#include "bpsat/rng.hpp"

namespace bpsat {

// Uniform random 3-SAT: m clauses over n variables, each clause three
// distinct variables with independent random polarity. Deterministic for a
// fixed seed. The (n, m) pair mirrors SATLIB's uf<n>-<m> naming.
inline CnfFormula gen_random_3sat(int n, int m, std::uint64_t seed) {
  if (n < 3)
    throw std::invalid_argument("gen_random_3sat: need at least 3 variables");
  if (m < 0) throw std::invalid_argument("gen_random_3sat: negative clause count");
  SplitMix64 rng(seed);
  CnfFormula f;
  f.num_vars = n;
  f.clauses.reserve(m);
  for (int c = 0; c < m; ++c) {
    int v0 = 1 + static_cast<int>(rng.next_below(n));
    int v1;
    do {
      v1 = 1 + static_cast<int>(rng.next_below(n));
    } while (v1 == v0);
    int v2;
    do {
      v2 = 1 + static_cast<int>(rng.next_below(n));
    } while (v2 == v0 || v2 == v1);
    Clause cl;
    cl.reserve(3);
    cl.emplace_back(v0, rng.next_bool());
    cl.emplace_back(v1, rng.next_bool());
    cl.emplace_back(v2, rng.next_bool());
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

}  // namespace bpsat
