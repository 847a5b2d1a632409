// Acceptance suite: end-to-end checks over the solver, the message rules,
// the benchmark harness, and the hardware time model. Prints one line per
// criterion; exits nonzero if any fail.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bpsat/bpsat.hpp"

using namespace bpsat;

namespace {

struct Lines {
  int failed = 0;
  std::vector<std::string> out;

  void check(int id, const std::string& name, bool ok, const std::string& detail) {
    out.push_back(std::string(ok ? "PASS" : "FAIL") + "  criterion " +
                  std::to_string(id) + " (" + name + "): " + detail);
    if (!ok) ++failed;
  }

  void skip(int id, const std::string& name, const std::string& why) {
    out.push_back("SKIP  criterion " + std::to_string(id) + " (" + name +
                  "): " + why);
  }
};

// early-exit satisfiability check by enumeration, independent of the solver
bool exists_model(const CnfFormula& f) {
  const std::size_t m = f.clauses.size();
  std::vector<std::uint32_t> pos(m, 0), neg(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (Literal lit : f.clauses[c]) {
      const std::uint32_t bit = 1u << (lit.var() - 1);
      (lit.positive() ? pos[c] : neg[c]) |= bit;
    }
  }
  for (std::uint64_t mask = 0; mask < (1ull << f.num_vars); ++mask) {
    bool ok = true;
    for (std::size_t c = 0; c < m; ++c) {
      if ((pos[c] & mask) == 0 && (neg[c] & ~mask) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

double parity_even_prob(const std::vector<double>& q1) {
  double even = 0.0;
  for (std::size_t mask = 0; mask < (1ull << q1.size()); ++mask) {
    double w = 1.0;
    int par = 0;
    for (std::size_t b = 0; b < q1.size(); ++b) {
      if (mask >> b & 1) {
        w *= q1[b];
        par ^= 1;
      } else {
        w *= 1.0 - q1[b];
      }
    }
    if (par == 0) even += w;
  }
  return even;
}

struct NamedRun {
  std::string label;
  std::vector<BenchInstance> instances;
  BenchReport report;
};

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * x);
  return buf;
}

std::vector<BenchInstance> satisfiable_filtered(int n, int m, int count,
                                                std::uint64_t seed,
                                                const std::string& cls) {
  std::vector<BenchInstance> out;
  std::uint64_t stream = 0;
  while (static_cast<int>(out.size()) < count) {
    CnfFormula f = gen_random_3sat(n, m, split_seed(seed, stream++));
    if (!exists_model(f)) continue;
    char idx[16];
    std::snprintf(idx, sizeof idx, "%03zu", out.size() + 1);
    out.push_back({cls, cls + "-" + idx + ".cnf", std::move(f)});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  Lines lines;
  const SpiModel reference_model;
  SolverConfig defaults;
  defaults.seed = 42;

  // ---- criterion 1: SPI reproduction -------------------------------------
  {
    const double s = spi(reference_model);
    const double rel = std::abs(s - 1.86e-7) / 1.86e-7;
    lines.check(1, "spi reproduction", rel < 0.01,
                "spi(3969, 1.417e9, 15) = " + std::to_string(s * 1e7) +
                    "e-7 s/iter, " + pct(rel) + " from the printed 1.86e-7");
  }

  // ---- criterion 2: speedup equation replay -------------------------------
  {
    SplitMix64 rng(1001);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const SpiModel m{rng.next_double(1.0, 1e5), rng.next_double(1e5, 1e10),
                       rng.next_double(1.0, 100.0)};
      const double t = rng.next_double(1e-6, 10.0);
      const long iters = 1 + static_cast<long>(rng.next_below(10000));
      const double got = estimate_speedup(t, iters, m);
      // independent operation order
      const double expect = (t * m.throughput * m.reference_iterations) /
                            (static_cast<double>(iters) * m.codeword_length);
      const double rel = std::abs(got - expect) / expect;
      worst = std::max(worst, rel);
      if (rel > 1e-9) ok = false;
    }
    std::ostringstream d;
    d << "10 randomized replays, worst relative error " << worst;
    lines.check(2, "speedup equation replay", ok, d.str());
  }

  // ---- criterion 3: message rules against enumeration oracles -------------
  {
    SplitMix64 rng(3003);
    int cases = 0;
    double worst = 0.0;
    const double eps = 1e-6;
    for (int trial = 0; trial < 10000; ++trial) {
      const int len = 1 + static_cast<int>(rng.next_below(10));
      CnfFormula f;
      f.num_vars = len;
      Clause cl;
      for (int v = 1; v <= len; ++v) cl.emplace_back(v, rng.next_bool());
      f.clauses.push_back(cl);
      const FactorGraph g = from_cnf(f);
      MessageState s = init_messages(g, InitPolicy::uniform_init());
      std::map<int, double> q_true;
      for (int eid : g.check_edges[0]) {
        const double q1 = rng.next_double(eps, 1.0 - eps);
        s.q[eid] = {1.0 - q1, q1};
        q_true[g.edges[eid].var] = q1;
      }
      update_clause_to_var(g, s);
      const int target = static_cast<int>(rng.next_below(len));
      const int eid = g.check_edges[0][target];
      const int value = static_cast<int>(rng.next_below(2));
      const double got = s.r[eid].get(value);
      const double expect =
          oracle_clause_marginal(cl, q_true, g.edges[eid].var, value);
      worst = std::max(worst, std::abs(got - expect));
      ++cases;
    }
    const bool clause_ok = worst <= 1e-12;
    double worst_xor = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      const int deg = 1 + static_cast<int>(rng.next_below(10));
      std::vector<std::vector<int>> h(1, std::vector<int>(deg, 1));
      const FactorGraph g = from_parity_matrix(h);
      MessageState s;
      s.q.assign(g.edges.size(), {});
      std::vector<double> neighbors;
      for (int eid = 0; eid < deg; ++eid) {
        const double q1 = rng.next_double(eps, 1.0 - eps);
        s.q[eid] = {1.0 - q1, q1};
      }
      const int target = static_cast<int>(rng.next_below(deg));
      for (int eid = 0; eid < deg; ++eid)
        if (eid != target) neighbors.push_back(s.q[eid].p1);
      const ProbPair r = xor_check_to_var(g, s, target);
      worst_xor = std::max(worst_xor,
                           std::abs(r.p0 - parity_even_prob(neighbors)));
      ++cases;
    }
    const bool xor_ok = worst_xor <= 1e-12;
    std::ostringstream d;
    d << cases << " randomized cases; worst |clause - oracle| = " << worst
      << ", worst |xor - enumeration| = " << worst_xor;
    lines.check(3, "message-rule oracle equivalence", clause_ok && xor_ok, d.str());
  }

  // ---- benchmark runs shared by criteria 4-7 ------------------------------
  std::deque<NamedRun> runs;  // deque: references stay valid across appends
  auto bench = [&](std::string label, std::vector<BenchInstance> instances,
                   const SolverConfig& cfg, int threads = 1) -> BenchReport& {
    NamedRun run;
    run.label = std::move(label);
    run.report = run_bench(instances, cfg, reference_model, {}, threads);
    run.instances = std::move(instances);
    runs.push_back(std::move(run));
    return runs.back().report;
  };

  const auto easy20 = generate_instances({20, 40, 100}, split_seed(7, 20));
  const auto easy50 = generate_instances({50, 100, 100}, split_seed(7, 50));
  const auto easy100 = generate_instances({100, 200, 100}, split_seed(7, 100));
  const auto& easy20_report = bench("easy-n20", easy20, defaults);
  const auto& easy50_report = bench("easy-n50", easy50, defaults);
  const auto& easy100_report = bench("easy-n100", easy100, defaults);

  // uf20-91 / uf100-430 shaped surrogates for trend checks
  const auto hard20 =
      satisfiable_filtered(20, 91, 60, split_seed(7, 2091), "gen20-91");
  const auto hard100 = generate_instances({100, 430, 60}, split_seed(7, 100430));
  const auto& hard20_report = bench("hard-n20", hard20, defaults);
  const auto& hard100_report = bench("hard-n100", hard100, defaults);

  SolverConfig no_restarts = defaults;
  no_restarts.max_restarts = 0;
  const auto& hard20_nr_report = bench("hard-n20-no-restarts", hard20, no_restarts);

  // optional SATLIB data: pass the directory as argv[1] or set BPSAT_SATLIB_DIR
  std::string satlib_dir;
  if (const char* env = std::getenv("BPSAT_SATLIB_DIR")) satlib_dir = env;
  if (satlib_dir.empty() && argc > 1) satlib_dir = argv[1];
  std::optional<double> satlib_uf20, satlib_uf100;
  if (!satlib_dir.empty() && std::filesystem::is_directory(satlib_dir)) {
    for (const char* cls : {"uf20-91", "uf100-430"}) {
      const auto sub = std::filesystem::path(satlib_dir) / cls;
      if (!std::filesystem::is_directory(sub)) continue;
      auto instances = load_instance_dir(sub.string());
      if (instances.empty()) continue;
      const auto& report = bench(std::string("satlib-") + cls,
                                 std::move(instances), defaults);
      const double comp = report.classes.at(0).completeness;
      (std::string(cls) == "uf20-91" ? satlib_uf20 : satlib_uf100) = comp;
    }
  }

  // ---- criterion 4: soundness of every sat outcome ------------------------
  {
    long sat_rows = 0, bad = 0;
    for (const NamedRun& run : runs) {
      for (std::size_t k = 0; k < run.report.details.size(); ++k) {
        const InstanceRow& row = run.report.details[k];
        if (row.status != "sat") continue;
        ++sat_rows;
        const Assignment a = Assignment::from_bits(row.assignment);
        if (!verify(run.instances[k].formula, a).satisfied) ++bad;
      }
    }
    std::ostringstream d;
    d << sat_rows << " sat outcomes across " << runs.size()
      << " benchmark runs, " << bad << " failed re-verification";
    lines.check(4, "soundness", bad == 0 && sat_rows > 0, d.str());
  }

  // ---- criterion 5: determinism across runs and thread counts -------------
  {
    std::vector<BenchInstance> mixed = easy20;
    mixed.insert(mixed.end(), hard20.begin(), hard20.end());
    const BenchReport a = run_bench(mixed, defaults, reference_model, {}, 1);
    const BenchReport b = run_bench(mixed, defaults, reference_model, {}, 1);
    const BenchReport c = run_bench(mixed, defaults, reference_model, {}, 4);
    const bool ok = detail_csv(a) == detail_csv(b) &&
                    detail_csv(a) == detail_csv(c) &&
                    summary_csv(a) == summary_csv(c);
    lines.check(5, "determinism", ok,
                std::to_string(mixed.size()) +
                    " instances: repeat run and 4-thread run byte-identical");
  }

  // ---- criterion 6: easy-region completeness ------------------------------
  {
    bool all_satisfiable = true;
    for (const BenchInstance& inst : easy20)
      if (count_models(inst.formula) < 1) all_satisfiable = false;
    const double c20 = easy20_report.classes.at(0).completeness;
    const double c50 = easy50_report.classes.at(0).completeness;
    const double c100 = easy100_report.classes.at(0).completeness;
    const bool ok =
        all_satisfiable && c20 >= 0.9 && c50 >= 0.9 && c100 >= 0.9;
    std::ostringstream d;
    d << "ratio-2.0 classes: n=20 " << pct(c20) << ", n=50 " << pct(c50)
      << ", n=100 " << pct(c100) << " (threshold 90%; n=20 instances "
      << (all_satisfiable ? "all" : "NOT all") << " verified satisfiable)";
    lines.check(6, "easy-region completeness", ok, d.str());
  }

  // ---- criterion 7: scaling-trend properties ---------------------------------
  {
    // (a) completeness non-increasing in size
    const double h20 = hard20_report.classes.at(0).completeness;
    const double h100 = hard100_report.classes.at(0).completeness;
    std::ostringstream d;
    bool ok = h20 >= h100;
    d << "generated uf20-91-shaped " << pct(h20) << " vs uf100-430-shaped "
      << pct(h100);
    if (satlib_uf20 && satlib_uf100) {
      ok = ok && *satlib_uf20 >= *satlib_uf100;
      d << "; SATLIB uf20-91 " << pct(*satlib_uf20) << " vs uf100-430 "
        << pct(*satlib_uf100);
    } else {
      d << "; SATLIB data not present, generated surrogate only";
    }
    lines.check(7, "trend: completeness vs size", ok, d.str());

    // (b) restarts never lose instances
    std::set<std::string> with, without;
    for (const InstanceRow& row : hard20_report.details)
      if (row.status == "sat") with.insert(row.name);
    for (const InstanceRow& row : hard20_nr_report.details)
      if (row.status == "sat") without.insert(row.name);
    bool subset = true;
    for (const std::string& name : without)
      if (!with.count(name)) subset = false;
    std::ostringstream db;
    db << "solved " << without.size() << "/" << hard20.size()
       << " single-attempt vs " << with.size() << "/" << hard20.size()
       << " with 9 restarts (delta " << (long(with.size()) - long(without.size()))
       << ")";
    lines.check(7, "trend: restarts only add solves", subset, db.str());

    // (c) solved-instance iteration counts stay flat with size
    const auto& m20 = easy20_report.classes.at(0).mean_iters;
    const auto& m100 = easy100_report.classes.at(0).mean_iters;
    bool flat = m20.has_value() && m100.has_value() && *m100 <= 3.0 * *m20 &&
                *m100 >= *m20 / 3.0;
    std::ostringstream dc;
    if (m20 && m100)
      dc << "mean iterations over solved: n=20 " << *m20 << ", n=100 " << *m100;
    else
      dc << "a class solved nothing";
    lines.check(7, "trend: iteration count flat in size", flat, dc.str());
  }

  // ---- criterion 8: parity decoding against brute-force ML ----------------
  {
    const std::vector<std::vector<int>> h = {
        {1, 1, 1, 0}, {1, 1, 0, 1}, {0, 1, 1, 1}};
    const FactorGraph g = from_parity_matrix(h);
    // enumerate the codebook
    std::vector<std::vector<std::uint8_t>> codewords;
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      std::vector<std::uint8_t> bits(5, 0);
      for (int v = 1; v <= 4; ++v) bits[v] = mask >> (v - 1) & 1;
      if (parity_satisfied(g, bits)) codewords.push_back(bits);
    }
    SplitMix64 rng(8008);
    int trials = 0, wrong = 0, unsat = 0, failed = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto& target = codewords[rng.next_below(codewords.size())];
      ParityInstance inst;
      inst.graph = g;
      inst.prior_one.assign(5, 0.0);
      for (int v = 1; v <= 4; ++v) {
        const double conf = rng.next_double(0.85, 0.99);
        inst.prior_one[v] = target[v] ? conf : 1.0 - conf;
      }
      // brute-force maximum likelihood over the codebook
      const std::vector<std::uint8_t>* ml = nullptr;
      double best = -1.0;
      for (const auto& cw : codewords) {
        double w = 1.0;
        for (int v = 1; v <= 4; ++v)
          w *= cw[v] ? inst.prior_one[v] : 1.0 - inst.prior_one[v];
        if (w > best) {
          best = w;
          ml = &cw;
        }
      }
      const DecodeResult res = decode(inst, {});
      ++trials;
      if (res.status != DecodeStatus::codeword) {
        ++failed;
        continue;
      }
      if (!parity_satisfied(g, res.bits)) ++unsat;
      if (res.bits != *ml) ++wrong;
    }
    std::ostringstream d;
    d << trials << " strong-prior trials: " << failed << " failed, " << wrong
      << " disagreed with ML, " << unsat << " violated parity";
    lines.check(8, "parity decode cross-check",
                failed == 0 && wrong == 0 && unsat == 0, d.str());
  }

  // ---- criterion 9: speedup column is exactly the model, row-wise ---------
  {
    const auto instances = generate_instances({20, 40, 25}, split_seed(7, 9));
    std::map<std::string, double> baselines;
    SplitMix64 rng(909);
    for (const auto& inst : instances)
      baselines[inst.name] = rng.next_double(1e-5, 2.0);
    const BenchReport report =
        run_bench(instances, defaults, reference_model, baselines);
    const auto details = parse_detail_csv(detail_csv(report));
    int rows = 0, bad = 0;
    for (const InstanceRow& row : details) {
      if (!row.speedup.has_value()) continue;
      ++rows;
      const double expect = estimate_speedup(*row.baseline_seconds,
                                             row.iterations, reference_model);
      if (*row.speedup != expect) ++bad;
    }
    std::ostringstream d;
    d << rows << " speedup cells recomputed from their own rows, " << bad
      << " mismatched";
    lines.check(9, "speedup column exactness", rows > 0 && bad == 0, d.str());
  }

  for (const std::string& line : lines.out) std::puts(line.c_str());
  if (lines.failed) {
    std::printf("%d criterion check(s) FAILED\n", lines.failed);
    return 1;
  }
  std::puts("all acceptance criteria passed");
  return 0;
}
