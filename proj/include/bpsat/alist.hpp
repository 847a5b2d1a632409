#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpsat/factor_graph.hpp"

namespace bpsat {

// alist sparse 0/1 matrix exchange (MacKay's format):
//   <cols=variables> <rows=checks>
//   <max column degree> <max row degree>
//   per-column degrees, per-row degrees
//   one line per column: 1-based row indices (0s are padding)
//   one line per row:    1-based column indices (0s are padding)
namespace detail {

inline std::vector<std::vector<long>> int_lines(std::istream& in) {
  std::vector<std::vector<long>> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    std::vector<long> vals;
    while (ls >> tok) {
      long v = 0;
      if (!parse_int(tok, v))
        throw std::runtime_error("alist line " + std::to_string(line_no) +
                                 ": unexpected token '" + tok + "'");
      vals.push_back(v);
    }
    if (!vals.empty()) lines.push_back(std::move(vals));
  }
  return lines;
}

}  // namespace detail

inline FactorGraph parse_alist(std::istream& in) {
  auto fail = [](const std::string& msg) -> void {
    throw std::runtime_error("alist: " + msg);
  };
  const auto lines = detail::int_lines(in);
  if (lines.size() < 4) fail("truncated file");
  if (lines[0].size() != 2) fail("first line must be '<cols> <rows>'");
  const long n = lines[0][0];  // variables (columns)
  const long m = lines[0][1];  // checks (rows)
  if (n <= 0 || m <= 0) fail("non-positive dimensions");
  if (lines.size() != static_cast<std::size_t>(4 + n + m))
    fail("expected " + std::to_string(4 + n + m) + " lines, found " +
         std::to_string(lines.size()));
  const auto& col_deg = lines[2];
  const auto& row_deg = lines[3];
  if (col_deg.size() != static_cast<std::size_t>(n)) fail("bad column degree list");
  if (row_deg.size() != static_cast<std::size_t>(m)) fail("bad row degree list");

  auto strip_padding = [](const std::vector<long>& v) {
    std::vector<long> out;
    for (long x : v)
      if (x != 0) out.push_back(x);
    return out;
  };

  // adjacency per column, then per row
  std::vector<std::vector<long>> cols(n), rows(m);
  for (long j = 0; j < n; ++j) cols[j] = strip_padding(lines[4 + j]);
  for (long i = 0; i < m; ++i) rows[i] = strip_padding(lines[4 + n + i]);

  for (long j = 0; j < n; ++j)
    if (static_cast<long>(cols[j].size()) != col_deg[j])
      fail("column " + std::to_string(j + 1) + " degree mismatch");
  for (long i = 0; i < m; ++i) {
    if (static_cast<long>(rows[i].size()) != row_deg[i])
      fail("row " + std::to_string(i + 1) + " degree mismatch");
    if (rows[i].empty())
      fail("all-zero row " + std::to_string(i + 1));
  }

  // cross-check: the column lists must describe the same matrix
  std::vector<std::vector<long>> cols_from_rows(n);
  FactorGraph g;
  g.num_vars = static_cast<int>(n);
  g.num_checks = static_cast<int>(m);
  for (long i = 0; i < m; ++i) {
    std::vector<long> seen;
    for (long j : rows[i]) {
      if (j < 1 || j > n) fail("row " + std::to_string(i + 1) + ": column index out of range");
      if (std::find(seen.begin(), seen.end(), j) != seen.end())
        fail("row " + std::to_string(i + 1) + ": duplicate column index");
      seen.push_back(j);
      cols_from_rows[j - 1].push_back(i + 1);
      g.edges.push_back({static_cast<int>(i), static_cast<int>(j), Polarity::parity});
    }
  }
  for (long j = 0; j < n; ++j) {
    auto declared = cols[j];
    std::sort(declared.begin(), declared.end());
    auto derived = cols_from_rows[j];
    std::sort(derived.begin(), derived.end());
    if (declared != derived)
      fail("column list " + std::to_string(j + 1) + " disagrees with row lists");
  }
  detail::link_edges(g);
  return g;
}

inline FactorGraph parse_alist(const std::string& text) {
  std::istringstream in(text);
  return parse_alist(in);
}

inline FactorGraph parse_alist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_alist(in);
}

inline void write_alist(std::ostream& out, const FactorGraph& g) {
  if (!g.parity())
    throw std::invalid_argument("write_alist: graph is not a parity graph");
  out << g.num_vars << ' ' << g.num_checks << '\n';
  std::size_t max_col = 0, max_row = 0;
  for (int v = 1; v <= g.num_vars; ++v) max_col = std::max(max_col, g.var_edges[v].size());
  for (int c = 0; c < g.num_checks; ++c) max_row = std::max(max_row, g.check_edges[c].size());
  out << max_col << ' ' << max_row << '\n';
  for (int v = 1; v <= g.num_vars; ++v)
    out << g.var_edges[v].size() << (v == g.num_vars ? "\n" : " ");
  for (int c = 0; c < g.num_checks; ++c)
    out << g.check_edges[c].size() << (c + 1 == g.num_checks ? "\n" : " ");
  for (int v = 1; v <= g.num_vars; ++v) {
    const auto& eids = g.var_edges[v];
    for (std::size_t k = 0; k < eids.size(); ++k)
      out << g.edges[eids[k]].check + 1 << (k + 1 == eids.size() ? "\n" : " ");
  }
  for (int c = 0; c < g.num_checks; ++c) {
    const auto& eids = g.check_edges[c];
    for (std::size_t k = 0; k < eids.size(); ++k)
      out << g.edges[eids[k]].var << (k + 1 == eids.size() ? "\n" : " ");
  }
}

}  // namespace bpsat
