#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bpsat/cnf.hpp"
#include "bpsat/dimacs.hpp"
#include "bpsat/generator.hpp"
#include "bpsat/rng.hpp"
#include "bpsat/solver.hpp"

namespace bpsat {

// Hardware time model: one decoder pass handles codeword_length symbols at
// the given throughput, measured at reference_iterations iterations.
struct SpiModel {
  double codeword_length = 3969.0;
  double throughput = 1.417e9;
  double reference_iterations = 15.0;

  friend bool operator==(const SpiModel&, const SpiModel&) = default;
};

// seconds per iteration
inline double spi(const SpiModel& m) {
  if (!(m.codeword_length > 0.0) || !(m.throughput > 0.0) ||
      !(m.reference_iterations > 0.0))
    throw std::invalid_argument("spi: model fields must be positive");
  return m.codeword_length / (m.throughput * m.reference_iterations);
}

// speedup = t_baseline / (iterations * spi)
inline double estimate_speedup(double t_baseline, long iterations,
                               const SpiModel& m) {
  if (!(t_baseline > 0.0))
    throw std::invalid_argument("estimate_speedup: t_baseline must be > 0");
  if (iterations < 1)
    throw std::invalid_argument("estimate_speedup: iterations must be >= 1");
  return t_baseline / (static_cast<double>(iterations) * spi(m));
}

struct BenchInstance {
  std::string class_name;
  std::string name;  // file basename, or synthesized for generated instances
  CnfFormula formula;
};

// "uf20-01.cnf" -> "uf20"; "uf20-91-003.cnf" -> "uf20-91"; the class is the
// basename with a final -<digits> run stripped, SATLIB style.
inline std::string class_name_of(std::string_view filename) {
  const std::size_t slash = filename.find_last_of("/\\");
  if (slash != std::string_view::npos) filename.remove_prefix(slash + 1);
  std::string_view stem = filename;
  if (stem.size() >= 4 && stem.substr(stem.size() - 4) == ".cnf")
    stem.remove_suffix(4);
  const std::size_t dash = stem.find_last_of('-');
  if (dash != std::string_view::npos && dash + 1 < stem.size()) {
    bool digits = true;
    for (char ch : stem.substr(dash + 1))
      if (ch < '0' || ch > '9') digits = false;
    if (digits) stem = stem.substr(0, dash);
  }
  return std::string(stem);
}

struct GenSpec {
  int num_vars = 0;
  int num_clauses = 0;
  int count = 0;
};

// Instance i of a generated class uses seed split_seed(seed, i); names follow
// the SATLIB pattern uf<n>-<m>-<index>.cnf.
inline std::vector<BenchInstance> generate_instances(const GenSpec& spec,
                                                     std::uint64_t seed) {
  if (spec.count < 0) throw std::invalid_argument("generate_instances: negative count");
  const std::string cls =
      "uf" + std::to_string(spec.num_vars) + "-" + std::to_string(spec.num_clauses);
  std::vector<BenchInstance> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%03d", i + 1);
    out.push_back({cls, cls + "-" + idx + ".cnf",
                   gen_random_3sat(spec.num_vars, spec.num_clauses,
                                   split_seed(seed, i))});
  }
  return out;
}

// Recursively collects *.cnf files, sorted by path for a stable instance
// order (seeds derive from the position in this list). Unreadable or
// malformed files are warned about and skipped.
inline std::vector<BenchInstance> load_instance_dir(const std::string& dir,
                                                    std::ostream* warn = nullptr) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: '" + dir + "'");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  std::vector<BenchInstance> out;
  for (const auto& p : paths) {
    try {
      ParseResult parsed = parse_dimacs_file(p.string());
      const std::string name = p.filename().string();
      out.push_back({class_name_of(name), name, std::move(parsed.formula)});
    } catch (const std::exception& e) {
      if (warn) *warn << "warning: skipping " << p.string() << ": " << e.what() << '\n';
    }
  }
  return out;
}

// two columns per line: <instance-name> <seconds>; '#' starts a comment
inline std::map<std::string, double> read_baseline(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    double seconds = 0.0;
    std::string extra;
    if (!(ls >> seconds) || (ls >> extra) || !(seconds > 0.0))
      throw std::runtime_error("baseline line " + std::to_string(line_no) +
                               ": expected '<name> <positive seconds>'");
    out[name] = seconds;
  }
  return out;
}

inline std::map<std::string, double> read_baseline_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_baseline(in);
}

struct InstanceRow {
  std::string class_name;
  std::string name;
  std::string status;  // "sat", "unknown", "failed"
  int attempts = 0;
  long iterations = 0;  // summed across attempts
  double hw_seconds = 0.0;
  std::optional<double> baseline_seconds;
  std::optional<double> speedup;
  std::string assignment;  // bit string, empty unless sat
  std::string assignment_hash;

  friend bool operator==(const InstanceRow&, const InstanceRow&) = default;
};

struct ClassRow {
  std::string class_name;
  int total = 0;
  int solved = 0;
  double completeness = 0.0;
  std::optional<double> mean_iters;
  std::optional<double> median_iters;
  std::optional<double> mean_hw_seconds;
  std::optional<double> mean_baseline_seconds;
  std::optional<double> mean_speedup;

  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

struct BenchReport {
  SpiModel model;
  std::vector<ClassRow> classes;
  std::vector<InstanceRow> details;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace detail {

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

// shortest round-trip formatting, locale independent
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("bad number in CSV: '" + std::string(s) + "'");
  return v;
}

inline std::optional<double> parse_opt(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

inline long parse_long(std::string_view s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("bad integer in CSV: '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline double mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace detail

// Solves every instance (instance k with seed split_seed(cfg.seed, k)),
// re-verifies each sat assignment against its formula, and aggregates
// per-class statistics. Iteration statistics cover solved instances only.
inline BenchReport run_bench(const std::vector<BenchInstance>& instances,
                             const SolverConfig& cfg, const SpiModel& model,
                             const std::map<std::string, double>& baselines = {},
                             int threads = 1, std::ostream* warn = nullptr) {
  const double spi_seconds = spi(model);
  std::vector<CnfFormula> formulas;
  formulas.reserve(instances.size());
  for (const auto& inst : instances) formulas.push_back(inst.formula);
  const std::vector<SolveOutcome> outcomes = solve_batch(formulas, cfg, threads);

  BenchReport report;
  report.model = model;
  std::vector<std::string> class_order;
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const BenchInstance& inst = instances[k];
    const SolveOutcome& res = outcomes[k];
    InstanceRow row;
    row.class_name = inst.class_name;
    row.name = inst.name;
    row.attempts = res.num_attempts();
    row.iterations = res.total_iterations;
    row.hw_seconds = static_cast<double>(res.total_iterations) * spi_seconds;
    if (res.status == SolveStatus::sat) {
      if (!verify(inst.formula, *res.assignment).satisfied)
        throw std::logic_error("run_bench: sat outcome failed re-verification");
      row.status = "sat";
      row.assignment = res.assignment->bits();
      row.assignment_hash = detail::hex64(fnv1a64(row.assignment));
    } else if (res.status == SolveStatus::unknown) {
      row.status = "unknown";
    } else {
      row.status = "failed";
      if (warn) *warn << "warning: " << inst.name << ": " << res.error << '\n';
    }
    const auto base = baselines.find(inst.name);
    if (base != baselines.end()) {
      row.baseline_seconds = base->second;
      if (res.status == SolveStatus::sat && res.total_iterations >= 1)
        row.speedup =
            estimate_speedup(base->second, res.total_iterations, model);
    }
    if (!by_class.count(inst.class_name)) class_order.push_back(inst.class_name);
    by_class[inst.class_name].push_back(report.details.size());
    report.details.push_back(std::move(row));
  }
  if (warn) {
    for (const auto& [name, seconds] : baselines) {
      bool known = false;
      for (const auto& inst : instances)
        if (inst.name == name) known = true;
      if (!known)
        *warn << "warning: baseline entry '" << name
              << "' matches no instance; skipped\n";
    }
  }

  for (const std::string& cls : class_order) {
    ClassRow crow;
    crow.class_name = cls;
    std::vector<double> iters, hw, base, speed;
    for (std::size_t idx : by_class[cls]) {
      const InstanceRow& row = report.details[idx];
      ++crow.total;
      if (row.status != "sat") continue;
      ++crow.solved;
      iters.push_back(static_cast<double>(row.iterations));
      hw.push_back(row.hw_seconds);
      if (row.baseline_seconds) base.push_back(*row.baseline_seconds);
      if (row.speedup) speed.push_back(*row.speedup);
    }
    crow.completeness =
        crow.total ? static_cast<double>(crow.solved) / crow.total : 0.0;
    if (!iters.empty()) {
      crow.mean_iters = detail::mean(iters);
      crow.median_iters = detail::median(iters);
      crow.mean_hw_seconds = detail::mean(hw);
    }
    if (!base.empty()) crow.mean_baseline_seconds = detail::mean(base);
    if (!speed.empty()) crow.mean_speedup = detail::mean(speed);
    report.classes.push_back(std::move(crow));
  }
  return report;
}

inline constexpr std::string_view kSummaryHeader =
    "class,total,solved,completeness,mean_iters,median_iters,mean_hw_seconds,"
    "mean_baseline_seconds,mean_speedup";
inline constexpr std::string_view kDetailHeader =
    "class,instance,status,attempts,iterations,hw_seconds,baseline_seconds,"
    "speedup,assignment,assignment_hash";

inline void write_summary_csv(std::ostream& out, const BenchReport& report) {
  out << kSummaryHeader << '\n';
  for (const ClassRow& c : report.classes) {
    out << c.class_name << ',' << c.total << ',' << c.solved << ','
        << detail::format_double(c.completeness) << ','
        << detail::format_opt(c.mean_iters) << ','
        << detail::format_opt(c.median_iters) << ','
        << detail::format_opt(c.mean_hw_seconds) << ','
        << detail::format_opt(c.mean_baseline_seconds) << ','
        << detail::format_opt(c.mean_speedup) << '\n';
  }
}

inline void write_detail_csv(std::ostream& out, const BenchReport& report) {
  out << kDetailHeader << '\n';
  for (const InstanceRow& r : report.details) {
    out << r.class_name << ',' << r.name << ',' << r.status << ',' << r.attempts
        << ',' << r.iterations << ','
        << detail::format_double(r.hw_seconds) << ','
        << detail::format_opt(r.baseline_seconds) << ','
        << detail::format_opt(r.speedup) << ',' << r.assignment << ','
        << r.assignment_hash << '\n';
  }
}

inline std::string summary_csv(const BenchReport& report) {
  std::ostringstream out;
  write_summary_csv(out, report);
  return out.str();
}

inline std::string detail_csv(const BenchReport& report) {
  std::ostringstream out;
  write_detail_csv(out, report);
  return out.str();
}

inline std::vector<ClassRow> parse_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader)
    throw std::runtime_error("summary CSV: bad header");
  std::vector<ClassRow> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 9) throw std::runtime_error("summary CSV: bad row");
    ClassRow c;
    c.class_name = cells[0];
    c.total = static_cast<int>(detail::parse_long(cells[1]));
    c.solved = static_cast<int>(detail::parse_long(cells[2]));
    c.completeness = detail::parse_double(cells[3]);
    c.mean_iters = detail::parse_opt(cells[4]);
    c.median_iters = detail::parse_opt(cells[5]);
    c.mean_hw_seconds = detail::parse_opt(cells[6]);
    c.mean_baseline_seconds = detail::parse_opt(cells[7]);
    c.mean_speedup = detail::parse_opt(cells[8]);
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<InstanceRow> parse_detail_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kDetailHeader)
    throw std::runtime_error("detail CSV: bad header");
  std::vector<InstanceRow> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 10) throw std::runtime_error("detail CSV: bad row");
    InstanceRow r;
    r.class_name = cells[0];
    r.name = cells[1];
    r.status = cells[2];
    r.attempts = static_cast<int>(detail::parse_long(cells[3]));
    r.iterations = detail::parse_long(cells[4]);
    r.hw_seconds = detail::parse_double(cells[5]);
    r.baseline_seconds = detail::parse_opt(cells[6]);
    r.speedup = detail::parse_opt(cells[7]);
    r.assignment = cells[8];
    r.assignment_hash = cells[9];
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ClassRow> parse_summary_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_summary_csv(in);
}

inline std::vector<InstanceRow> parse_detail_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_detail_csv(in);
}

}  // namespace bpsat
