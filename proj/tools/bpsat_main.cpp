// bpsat command line: solve single instances, run benchmark sweeps, model
// hardware speedups, and decode parity-check instances.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpsat/bpsat.hpp"

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnknown = 0;
constexpr int kExitInputError = 2;

struct EngineFlags {
  int max_iters = bpsat::EngineConfig{}.max_iterations;
  double epsilon = bpsat::EngineConfig{}.epsilon;
  double damping = bpsat::EngineConfig{}.damping;
  double conv_tol = bpsat::EngineConfig{}.convergence_tol;
  int tie = bpsat::EngineConfig{}.tie_value;
  int max_restarts = bpsat::SolverConfig{}.max_restarts;
  std::uint64_t seed = bpsat::SolverConfig{}.seed;
  bool all_random = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-iters", max_iters, "Inner loop iteration budget");
    cmd->add_option("--max-restarts", max_restarts,
                    "Random restarts after the first attempt");
    cmd->add_option("--seed", seed, "Master random seed");
    cmd->add_option("--epsilon", epsilon, "Message clamp bound");
    cmd->add_option("--damping", damping, "Message damping in [0,1)");
    cmd->add_option("--conv-tol", conv_tol, "Fixed-point convergence tolerance");
    cmd->add_option("--tie", tie, "Decision bit for Q(1) = 0.5 ties");
    cmd->add_flag("--all-random", all_random,
                  "Randomize the first attempt too (default: uniform first)");
  }

  bpsat::SolverConfig solver_config() const {
    bpsat::SolverConfig cfg;
    cfg.engine.max_iterations = max_iters;
    cfg.engine.epsilon = epsilon;
    cfg.engine.damping = damping;
    cfg.engine.convergence_tol = conv_tol;
    cfg.engine.tie_value = tie;
    cfg.max_restarts = max_restarts;
    cfg.seed = seed;
    cfg.restart_policy = all_random
                             ? bpsat::RestartPolicy::all_random
                             : bpsat::RestartPolicy::uniform_first_then_random;
    return cfg;
  }
};

int run_solve(const std::string& path, const EngineFlags& flags) {
  const bpsat::ParseResult parsed = bpsat::parse_dimacs_file(path);
  const bpsat::CnfFormula& f = parsed.formula;
  std::cout << "c " << path << ": " << f.num_vars << " vars, "
            << f.clauses.size() << " clauses";
  if (parsed.tautologies_dropped)
    std::cout << " (" << parsed.tautologies_dropped << " tautologies dropped)";
  std::cout << '\n';
  const bpsat::SolveOutcome out = bpsat::solve(f, flags.solver_config());
  if (out.status == bpsat::SolveStatus::sat) {
    std::cout << "s SATISFIABLE\n";
    std::cout << "v";
    for (int v = 1; v <= f.num_vars; ++v)
      std::cout << ' ' << (out.assignment->value(v) ? v : -v);
    std::cout << " 0\n";
    std::cout << "c iterations " << out.total_iterations << " attempts "
              << out.num_attempts() << (out.degenerate ? " degenerate" : "")
              << '\n';
    return kExitSat;
  }
  std::cout << "s UNKNOWN\n";
  std::cout << "c iterations " << out.total_iterations << " attempts "
            << out.num_attempts() << '\n';
  return kExitUnknown;
}

std::vector<bpsat::GenSpec> parse_gen_specs(const std::vector<std::string>& raw) {
  std::vector<bpsat::GenSpec> specs;
  for (const std::string& s : raw) {
    bpsat::GenSpec g;
    int consumed = 0;
    if (std::sscanf(s.c_str(), "%d,%d,%d%n", &g.num_vars, &g.num_clauses,
                    &g.count, &consumed) != 3 ||
        consumed != static_cast<int>(s.size()) || g.num_vars < 3 ||
        g.num_clauses < 1 || g.count < 1)
      throw std::runtime_error("bad --gen spec '" + s + "', expected n,m,count");
    specs.push_back(g);
  }
  return specs;
}

int run_bench_cmd(const std::string& dir, const std::vector<std::string>& gen,
                  const std::string& baseline_path, const std::string& out_path,
                  const std::string& detail_path, int threads,
                  const EngineFlags& flags, const bpsat::SpiModel& model) {
  std::vector<bpsat::BenchInstance> instances;
  if (!dir.empty()) instances = bpsat::load_instance_dir(dir, &std::cerr);
  const auto specs = parse_gen_specs(gen);
  const std::uint64_t gen_master = bpsat::split_seed(flags.seed, 1);
  for (std::size_t c = 0; c < specs.size(); ++c) {
    auto generated =
        bpsat::generate_instances(specs[c], bpsat::split_seed(gen_master, c));
    instances.insert(instances.end(), generated.begin(), generated.end());
  }
  if (instances.empty()) throw std::runtime_error("no instances to run");

  std::map<std::string, double> baselines;
  if (!baseline_path.empty()) baselines = bpsat::read_baseline_file(baseline_path);

  bpsat::SolverConfig cfg = flags.solver_config();
  cfg.seed = bpsat::split_seed(flags.seed, 2);
  const bpsat::BenchReport report =
      bpsat::run_bench(instances, cfg, model, baselines, threads, &std::cerr);

  std::cout << bpsat::summary_csv(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    bpsat::write_summary_csv(out, report);
    std::string detail = detail_path;
    if (detail.empty()) {
      detail = out_path;
      const std::size_t dot = detail.rfind('.');
      detail.insert(dot == std::string::npos ? detail.size() : dot, "_detail");
    }
    std::ofstream dout(detail);
    if (!dout) throw std::runtime_error("cannot write '" + detail + "'");
    bpsat::write_detail_csv(dout, report);
    std::cerr << "wrote " << out_path << " and " << detail << '\n';
  }
  return 0;
}

int run_estimate(double t_baseline, long iters, const bpsat::SpiModel& model) {
  const double s = bpsat::spi(model);
  const double speedup = bpsat::estimate_speedup(t_baseline, iters, model);
  std::cout << "spi_seconds_per_iteration," << s << '\n';
  std::cout << "estimated_hw_seconds," << static_cast<double>(iters) * s << '\n';
  std::cout << "speedup," << speedup << '\n';
  return 0;
}

int run_decode(const std::string& alist_path, const std::string& priors_path,
               const EngineFlags& flags) {
  bpsat::ParityInstance inst;
  inst.graph = bpsat::parse_alist_file(alist_path);
  std::ifstream in(priors_path);
  if (!in) throw std::runtime_error("cannot open '" + priors_path + "'");
  inst.prior_one.assign(1, 0.0);
  double p = 0.0;
  while (in >> p) inst.prior_one.push_back(p);
  bpsat::EngineConfig cfg = flags.solver_config().engine;
  const bpsat::DecodeResult res = bpsat::decode(inst, cfg);
  if (res.status == bpsat::DecodeStatus::codeword) {
    std::cout << "codeword ";
    for (int v = 1; v <= inst.graph.num_vars; ++v)
      std::cout << static_cast<int>(res.bits[v]);
    std::cout << " iterations " << res.iterations << '\n';
    return 0;
  }
  std::cout << "FAILED after " << res.iterations << " iterations\n";
  return 1;
}

// Times a user-supplied solver over a directory of instances and writes the
// two-column baseline file bench consumes. Wall-clock, one run per instance.
int run_baseline(const std::string& dir, const std::string& solver_cmd,
                 const std::string& out_path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw std::runtime_error("no .cnf files under '" + dir + "'");
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  for (const auto& p : paths) {
    const std::string cmd = solver_cmd + " '" + p.string() + "' > /dev/null 2>&1";
    const auto start = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    out << p.filename().string() << ' ' << elapsed.count() << '\n';
    std::cerr << p.filename().string() << ' ' << elapsed.count() << "s rc="
              << rc << '\n';
  }
  std::cerr << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"belief-propagation SAT solver and benchmark harness"};
  app.require_subcommand(1);

  EngineFlags solve_flags, bench_flags, decode_flags;
  bpsat::SpiModel bench_model, estimate_model;

  auto* solve_cmd = app.add_subcommand("solve", "Solve one DIMACS CNF file");
  std::string solve_path;
  solve_cmd->add_option("file", solve_path, "DIMACS CNF file")->required();
  solve_flags.attach(solve_cmd);

  auto* bench_cmd =
      app.add_subcommand("bench", "Run a benchmark sweep and emit CSV reports");
  std::string bench_dir, baseline_path, out_path, detail_path;
  std::vector<std::string> gen_specs;
  int threads = 1;
  bench_cmd->add_option("dir", bench_dir, "Directory of .cnf files");
  bench_cmd->add_option("--gen", gen_specs,
                        "Generate a random 3-SAT class: n,m,count (repeatable)");
  bench_cmd->add_option("--baseline", baseline_path,
                        "Two-column '<instance> <seconds>' timing file");
  bench_cmd->add_option("--out", out_path, "Summary CSV path");
  bench_cmd->add_option("--detail", detail_path,
                        "Detail CSV path (default: <out>_detail.csv)");
  bench_cmd->add_option("--threads", threads, "Parallel solver workers");
  bench_flags.attach(bench_cmd);
  bench_cmd->add_option("--spi-codeword", bench_model.codeword_length,
                        "SPI model codeword length");
  bench_cmd->add_option("--spi-throughput", bench_model.throughput,
                        "SPI model throughput, symbols/s");
  bench_cmd->add_option("--spi-iters", bench_model.reference_iterations,
                        "SPI model reference iteration count");

  auto* estimate_cmd =
      app.add_subcommand("estimate", "Hardware speedup for one measurement");
  double t_baseline = 0.0;
  long est_iters = 0;
  estimate_cmd->add_option("--t-baseline", t_baseline, "Baseline seconds")
      ->required();
  estimate_cmd->add_option("--iters", est_iters, "Iterations used")->required();
  estimate_cmd->add_option("--spi-codeword", estimate_model.codeword_length,
                           "SPI model codeword length");
  estimate_cmd->add_option("--spi-throughput", estimate_model.throughput,
                           "SPI model throughput, symbols/s");
  estimate_cmd->add_option("--spi-iters", estimate_model.reference_iterations,
                           "SPI model reference iteration count");

  auto* decode_cmd =
      app.add_subcommand("decode", "Decode a parity-check instance");
  std::string alist_path, priors_path;
  decode_cmd->add_option("alist", alist_path, "Parity matrix, alist format")
      ->required();
  decode_cmd->add_option("priors", priors_path,
                         "Whitespace-separated P(v=1) priors, one per variable")
      ->required();
  decode_flags.attach(decode_cmd);

  auto* baseline_cmd = app.add_subcommand(
      "baseline", "Time an external solver to produce a baseline file");
  std::string base_dir, solver_cmd_str, base_out = "baseline.txt";
  baseline_cmd->add_option("dir", base_dir, "Directory of .cnf files")
      ->required();
  baseline_cmd->add_option("--solver", solver_cmd_str, "Solver command to time")
      ->required();
  baseline_cmd->add_option("--out", base_out, "Output timing file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_path, solve_flags);
    if (bench_cmd->parsed())
      return run_bench_cmd(bench_dir, gen_specs, baseline_path, out_path,
                           detail_path, threads, bench_flags, bench_model);
    if (estimate_cmd->parsed())
      return run_estimate(t_baseline, est_iters, estimate_model);
    if (decode_cmd->parsed())
      return run_decode(alist_path, priors_path, decode_flags);
    if (baseline_cmd->parsed())
      return run_baseline(base_dir, solver_cmd_str, base_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
