#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bpsat/bp.hpp"
#include "bpsat/factor_graph.hpp"

namespace bpsat {

// XOR-constraint instance: a parity graph plus per-variable channel priors.
struct ParityInstance {
  FactorGraph graph;
  std::vector<double> prior_one;  // P(v = 1), [0] unused

  void validate() const {
    if (!graph.parity())
      throw std::invalid_argument("ParityInstance: graph is not a parity graph");
    if (static_cast<int>(prior_one.size()) != graph.num_vars + 1)
      throw std::invalid_argument("ParityInstance: prior count mismatch");
    for (int v = 1; v <= graph.num_vars; ++v)
      if (!(prior_one[v] > 0.0) || !(prior_one[v] < 1.0))
        throw std::invalid_argument("ParityInstance: priors must lie in (0, 1)");
  }
};

// Check-to-variable rule for an XOR constraint: the probability the parity
// of the other neighbors is even is 1/2 + 1/2 * prod (1 - 2 q(1)).
inline ProbPair xor_check_message(std::span<const double> other_q1) {
  double prod = 1.0;
  for (double q1 : other_q1) prod *= 1.0 - 2.0 * q1;
  const double r0 = 0.5 + 0.5 * prod;
  return {r0, 1.0 - r0};
}

inline ProbPair xor_check_to_var(const FactorGraph& g, const MessageState& s,
                                 int edge_id) {
  std::vector<double> other_q1;
  for (int other : g.check_edges[g.edges[edge_id].check]) {
    if (other == edge_id) continue;
    other_q1.push_back(s.q[other].p1);
  }
  return xor_check_message(other_q1);
}

inline bool parity_satisfied(const FactorGraph& g,
                             const std::vector<std::uint8_t>& bits) {
  for (int c = 0; c < g.num_checks; ++c) {
    int sum = 0;
    for (int eid : g.check_edges[c]) sum ^= bits[g.edges[eid].var];
    if (sum != 0) return false;
  }
  return true;
}

enum class DecodeStatus { codeword, failed };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::failed;
  std::vector<std::uint8_t> bits;  // [0] unused; present iff codeword
  int iterations = 0;
};

// Probability-domain sum-product decoding. Unlike the SAT path, the channel
// priors multiply into both the q messages and the posteriors.
inline DecodeResult decode(const ParityInstance& inst, const EngineConfig& cfg) {
  cfg.validate();
  inst.validate();
  const FactorGraph& g = inst.graph;

  MessageState s;
  s.r.assign(g.edges.size(), {});
  s.posterior.assign(g.num_vars + 1, {});
  s.q.resize(g.edges.size());
  for (std::size_t eid = 0; eid < g.edges.size(); ++eid) {
    const double p1 = inst.prior_one[g.edges[eid].var];
    s.q[eid] = {1.0 - p1, p1};
  }
  s.q_prev = s.q;

  std::vector<std::uint8_t> bits(g.num_vars + 1, 0);
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    for (int c = 0; c < g.num_checks; ++c) {
      const auto& eids = g.check_edges[c];
      for (int eid : eids) {
        double prod = 1.0;
        for (int other : eids) {
          if (other == eid) continue;
          prod *= 1.0 - 2.0 * s.q[other].p1;
        }
        s.r[eid] = {0.5 + 0.5 * prod, 0.5 - 0.5 * prod};
      }
    }
    s.q_prev.swap(s.q);
    for (int v = 1; v <= g.num_vars; ++v) {
      const auto& eids = g.var_edges[v];
      const double p1 = inst.prior_one[v];
      for (int eid : eids) {
        double w0 = 1.0 - p1, w1 = p1;
        for (int other : eids) {
          if (other == eid) continue;
          w0 *= s.r[other].p0;
          w1 *= s.r[other].p1;
        }
        ProbPair next = clamped(normalized(w0, w1), cfg.epsilon);
        if (cfg.damping > 0.0) {
          const double lam = cfg.damping;
          const ProbPair& prev = s.q_prev[eid];
          next = normalized((1.0 - lam) * next.p0 + lam * prev.p0,
                            (1.0 - lam) * next.p1 + lam * prev.p1);
        }
        s.q[eid] = next;
      }
    }
    for (int v = 1; v <= g.num_vars; ++v) {
      const double p1 = inst.prior_one[v];
      double w0 = 1.0 - p1, w1 = p1;
      for (int eid : g.var_edges[v]) {
        w0 *= s.r[eid].p0;
        w1 *= s.r[eid].p1;
      }
      s.posterior[v] = normalized(w0, w1);
    }
    for (int v = 1; v <= g.num_vars; ++v) {
      const double q1 = s.posterior[v].p1;
      bits[v] = q1 > 0.5 ? 1 : (q1 < 0.5 ? 0 : (cfg.tie_value != 0 ? 1 : 0));
    }
    if (parity_satisfied(g, bits)) return {DecodeStatus::codeword, bits, it};
  }
  return {DecodeStatus::failed, {}, cfg.max_iterations};
}

}  // namespace bpsat
