#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "bpsat/bp.hpp"
#include "bpsat/cnf.hpp"
#include "bpsat/factor_graph.hpp"
#include "bpsat/rng.hpp"

namespace bpsat {

enum class RestartPolicy { uniform_first_then_random, all_random };

struct SolverConfig {
  EngineConfig engine;
  int max_restarts = 9;  // attempts = max_restarts + 1
  std::uint64_t seed = 1;
  RestartPolicy restart_policy = RestartPolicy::uniform_first_then_random;

  void validate() const {
    engine.validate();
    if (max_restarts < 0)
      throw std::invalid_argument("SolverConfig: max_restarts must be >= 0");
  }
};

enum class SolveStatus { sat, unknown, failed };

struct AttemptRecord {
  int iterations = 0;
  InnerStatus end = InnerStatus::exhausted;
};

// Result of one solve. The engine can find assignments but never refute, so
// the terminal states are Sat and Unknown; 'failed' only appears in batch
// results when an instance raised an error.
struct SolveOutcome {
  SolveStatus status = SolveStatus::unknown;
  std::optional<Assignment> assignment;  // present iff sat
  long total_iterations = 0;
  std::vector<AttemptRecord> attempts;
  bool degenerate = false;  // zero-clause input, satisfied vacuously
  std::string error;        // set only for failed batch entries

  int num_attempts() const { return static_cast<int>(attempts.size()); }
};

// Break-and-restart outer loop: run the inner loop up to max_restarts + 1
// times, re-seeding the messages randomly after every failed attempt.
// Attempt seeds derive from (seed, attempt index), so outcomes are
// reproducible regardless of where the call runs.
inline SolveOutcome solve(const CnfFormula& f, const SolverConfig& cfg) {
  cfg.validate();
  SolveOutcome out;
  if (f.clauses.empty()) {
    out.status = SolveStatus::sat;
    out.assignment = Assignment(f.num_vars);
    out.degenerate = true;
    return out;
  }
  const FactorGraph g = from_cnf(f);
  const std::vector<std::uint8_t> used = used_vars(f);
  for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
    const bool uniform =
        attempt == 0 &&
        cfg.restart_policy == RestartPolicy::uniform_first_then_random;
    const InitPolicy init =
        uniform ? InitPolicy::uniform_init()
                : InitPolicy::random_init(split_seed(cfg.seed, attempt),
                                          cfg.engine.epsilon);
    InnerResult res = run_inner_loop(f, g, init_messages(g, init), cfg.engine);
    out.attempts.push_back({res.iterations, res.status});
    out.total_iterations += res.iterations;
    if (res.status == InnerStatus::solved) {
      Assignment a = std::move(*res.assignment);
      for (int v = 1; v <= f.num_vars; ++v)
        if (!used[v]) a.set(v, false);
      if (!verify(f, a).satisfied)
        throw std::logic_error("solve: unverified assignment reported solved");
      out.status = SolveStatus::sat;
      out.assignment = std::move(a);
      return out;
    }
  }
  out.status = SolveStatus::unknown;
  return out;
}

// Independent solves with per-instance derived seeds. Results are identical
// for any thread count; instance k always runs with seed split_seed(seed, k).
inline std::vector<SolveOutcome> solve_batch(
    const std::vector<CnfFormula>& instances, const SolverConfig& cfg,
    int threads = 1) {
  cfg.validate();
  std::vector<SolveOutcome> out(instances.size());
  auto run_one = [&](std::size_t k) {
    SolverConfig c = cfg;
    c.seed = split_seed(cfg.seed, k);
    try {
      out[k] = solve(instances[k], c);
    } catch (const std::exception& e) {
      out[k] = {};
      out[k].status = SolveStatus::failed;
      out[k].error = e.what();
    }
  };
  if (threads <= 1 || instances.size() <= 1) {
    for (std::size_t k = 0; k < instances.size(); ++k) run_one(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::min<std::size_t>(threads, instances.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= instances.size()) return;
        run_one(k);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace bpsat
