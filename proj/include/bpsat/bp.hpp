#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bpsat/cnf.hpp"
#include "bpsat/factor_graph.hpp"
#include "bpsat/rng.hpp"

namespace bpsat {

// A (P(0), P(1)) pair. Messages and posteriors are stored unlogged; the
// clamp below keeps products away from the absorbing endpoints.
struct ProbPair {
  double p0 = 0.0;
  double p1 = 0.0;

  double get(int k) const { return k ? p1 : p0; }
  void set(int k, double v) { (k ? p1 : p0) = v; }

  friend bool operator==(const ProbPair&, const ProbPair&) = default;
};

struct EngineConfig {
  int max_iterations = 200;
  double epsilon = 1e-6;         // clamp bound on stored q components
  double convergence_tol = 1e-9;  // max |dq| declaring a stuck fixed point
  double damping = 0.0;           // mix of previous q into the new one
  int tie_value = 0;              // decision bit when Q(1) is exactly 0.5

  void validate() const {
    if (max_iterations < 1)
      throw std::invalid_argument("EngineConfig: max_iterations must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon < 0.5))
      throw std::invalid_argument("EngineConfig: epsilon must be in (0, 0.5)");
    if (!(damping >= 0.0) || !(damping < 1.0))
      throw std::invalid_argument("EngineConfig: damping must be in [0, 1)");
    if (!(convergence_tol > 0.0))
      throw std::invalid_argument("EngineConfig: convergence_tol must be > 0");
    if (tie_value != 0 && tie_value != 1)
      throw std::invalid_argument("EngineConfig: tie_value must be 0 or 1");
  }
};

struct InitPolicy {
  enum class Kind { uniform, random };
  Kind kind = Kind::uniform;
  std::uint64_t seed = 0;
  double epsilon = 1e-6;  // draw bound for random q(1)

  static InitPolicy uniform_init() { return {}; }
  static InitPolicy random_init(std::uint64_t seed, double epsilon = 1e-6) {
    return {Kind::random, seed, epsilon};
  }
};

// Per-edge messages plus per-variable posteriors, double-buffered so one
// iteration's q updates all read the previous iteration's values.
struct MessageState {
  std::vector<ProbPair> r;          // clause -> variable, per edge
  std::vector<ProbPair> q;          // variable -> clause, per edge
  std::vector<ProbPair> q_prev;     // previous iteration's q
  std::vector<ProbPair> posterior;  // per variable, [0] unused
  int iteration = 0;
};

inline MessageState init_messages(const FactorGraph& g, const InitPolicy& policy) {
  MessageState s;
  s.r.assign(g.edges.size(), {});
  s.posterior.assign(g.num_vars + 1, {});
  s.q.resize(g.edges.size());
  if (policy.kind == InitPolicy::Kind::uniform) {
    for (auto& q : s.q) q = {0.5, 0.5};
  } else {
    SplitMix64 rng(policy.seed);
    for (auto& q : s.q) {
      const double q1 = rng.next_double(policy.epsilon, 1.0 - policy.epsilon);
      q = {1.0 - q1, q1};
    }
  }
  s.q_prev = s.q;
  return s;
}

// variable value that makes this edge's literal true
inline int satisfying_value(Polarity p) {
  return p == Polarity::negated ? 0 : 1;
}

// probability, under q, that the edge's literal is true
inline double literal_true_prob(const Edge& e, const ProbPair& q) {
  return e.polarity == Polarity::negated ? q.p0 : q.p1;
}

inline ProbPair normalized(double w0, double w1) {
  const double sum = w0 + w1;
  if (!(sum > 0.0) || !std::isfinite(sum)) return {0.5, 0.5};
  return {w0 / sum, w1 / sum};
}

inline ProbPair clamped(const ProbPair& p, double eps) {
  auto clip = [eps](double x) {
    return x < eps ? eps : (x > 1.0 - eps ? 1.0 - eps : x);
  };
  return {clip(p.p0), clip(p.p1)};
}

// Clause-to-variable messages r, from the previous iteration's q. For an edge
// whose literal is satisfied by value t: r(t) = 1 and
// r(1-t) = 1 - prod over the clause's other edges of (1 - P(literal true)).
inline void update_clause_to_var(const FactorGraph& g, MessageState& s) {
  for (int c = 0; c < g.num_checks; ++c) {
    const auto& eids = g.check_edges[c];
    for (int eid : eids) {
      double prod = 1.0;
      for (int other : eids) {
        if (other == eid) continue;
        prod *= 1.0 - literal_true_prob(g.edges[other], s.q[other]);
      }
      const int t = satisfying_value(g.edges[eid].polarity);
      s.r[eid].set(t, 1.0);
      s.r[eid].set(1 - t, 1.0 - prod);
    }
  }
}

// Variable-to-clause messages q from this iteration's r: product over the
// variable's other clauses, normalized to sum 1, clamped, optionally damped
// against the previous value. Returns the max absolute component change.
inline double update_var_to_clause(const FactorGraph& g, MessageState& s,
                                   const EngineConfig& cfg) {
  s.q_prev.swap(s.q);
  double max_delta = 0.0;
  for (int v = 1; v <= g.num_vars; ++v) {
    const auto& eids = g.var_edges[v];
    for (int eid : eids) {
      ProbPair next{0.5, 0.5};
      if (eids.size() > 1) {
        double w0 = 1.0, w1 = 1.0;
        for (int other : eids) {
          if (other == eid) continue;
          w0 *= s.r[other].p0;
          w1 *= s.r[other].p1;
        }
        next = normalized(w0, w1);
      }
      next = clamped(next, cfg.epsilon);
      const ProbPair& prev = s.q_prev[eid];
      if (cfg.damping > 0.0) {
        const double lam = cfg.damping;
        next = normalized((1.0 - lam) * next.p0 + lam * prev.p0,
                          (1.0 - lam) * next.p1 + lam * prev.p1);
      }
      s.q[eid] = next;
      max_delta = std::max(max_delta, std::abs(next.p0 - prev.p0));
      max_delta = std::max(max_delta, std::abs(next.p1 - prev.p1));
    }
  }
  return max_delta;
}

// Pseudo-posteriors Q: product of r over all incident clauses, normalized.
// Isolated variables stay uninformative.
inline void compute_posteriors(const FactorGraph& g, MessageState& s) {
  for (int v = 1; v <= g.num_vars; ++v) {
    const auto& eids = g.var_edges[v];
    if (eids.empty()) {
      s.posterior[v] = {0.5, 0.5};
      continue;
    }
    double w0 = 1.0, w1 = 1.0;
    for (int eid : eids) {
      w0 *= s.r[eid].p0;
      w1 *= s.r[eid].p1;
    }
    s.posterior[v] = normalized(w0, w1);
  }
}

inline Assignment hard_decision(const MessageState& s, const EngineConfig& cfg) {
  const int num_vars = static_cast<int>(s.posterior.size()) - 1;
  Assignment a(num_vars);
  for (int v = 1; v <= num_vars; ++v) {
    const double q1 = s.posterior[v].p1;
    a.set(v, q1 > 0.5 ? true : (q1 < 0.5 ? false : cfg.tie_value != 0));
  }
  return a;
}

enum class InnerStatus { solved, converged, exhausted };

struct InnerResult {
  InnerStatus status = InnerStatus::exhausted;
  int iterations = 0;
  std::optional<Assignment> assignment;  // present iff solved
};

// One BP run: synchronous r, q, Q phases per iteration, hard decision and
// satisfaction check every iteration. Ends on a verified assignment, a stuck
// fixed point, or budget exhaustion. Solved assignments are always
// verifier-checked before return.
inline InnerResult run_inner_loop(const CnfFormula& f, const FactorGraph& g,
                                  MessageState state, const EngineConfig& cfg) {
  cfg.validate();
  if (g.parity() || g.num_vars != f.num_vars ||
      g.num_checks != static_cast<int>(f.clauses.size()))
    throw std::invalid_argument("run_inner_loop: graph does not match formula");
  if (state.q.size() != g.edges.size())
    throw std::invalid_argument("run_inner_loop: state does not match graph");
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    update_clause_to_var(g, state);
    const double delta = update_var_to_clause(g, state, cfg);
    compute_posteriors(g, state);
    state.iteration = it;
    Assignment a = hard_decision(state, cfg);
    if (verify(f, a).satisfied)
      return {InnerStatus::solved, it, std::move(a)};
    if (delta < cfg.convergence_tol) return {InnerStatus::converged, it, {}};
  }
  return {InnerStatus::exhausted, cfg.max_iterations, {}};
}

}  // namespace bpsat
