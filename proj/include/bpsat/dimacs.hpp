#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bpsat/cnf.hpp"

namespace bpsat {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The input contains an empty clause. No assignment can satisfy it, and the
// message-passing engine has no way to represent one, so it is rejected at
// parse time rather than handed to the solver.
struct TriviallyUnsatError : ParseError {
  using ParseError::ParseError;
};

struct ParseResult {
  CnfFormula formula;
  int tautologies_dropped = 0;
};

// DIMACS CNF: 'c' comment lines, one 'p cnf <vars> <clauses>' header, clauses
// as nonzero integers terminated by 0, free to span lines. A line starting
// with '%' ends the input (SATLIB files carry a "%\n0" trailer).
// Duplicate literals within a clause are dropped; tautological clauses are
// removed and counted.
inline ParseResult parse_dimacs(std::istream& in) {
  ParseResult result;
  CnfFormula& f = result.formula;
  bool seen_header = false;
  long declared_clauses = 0;
  long raw_clauses = 0;
  Clause current;
  std::string line;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };

  bool terminated = false;
  while (!terminated && std::getline(in, line)) {
    ++line_no;
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) continue;
    const char first = line[i];
    if (first == 'c') continue;
    if (first == '%') {
      terminated = true;
      break;
    }
    if (first == 'p') {
      if (seen_header) fail("duplicate 'p' header");
      std::istringstream hs(line.substr(i));
      std::string p, fmt;
      long nv = -1, nc = -1;
      std::string extra;
      if (!(hs >> p >> fmt >> nv >> nc) || p != "p" || fmt != "cnf" || nv < 0 ||
          nc < 0 || (hs >> extra))
        fail("malformed header, expected 'p cnf <vars> <clauses>'");
      f.num_vars = static_cast<int>(nv);
      declared_clauses = nc;
      seen_header = true;
      continue;
    }
    if (!seen_header) fail("clause data before 'p cnf' header");
    std::istringstream ls(line.substr(i));
    std::string tok;
    while (ls >> tok) {
      long v = 0;
      if (!detail::parse_int(tok, v)) fail("unexpected token '" + tok + "'");
      if (v == 0) {
        ++raw_clauses;
        if (current.empty())
          throw TriviallyUnsatError("line " + std::to_string(line_no) +
                                    ": empty clause, formula is trivially "
                                    "unsatisfiable");
        // normalize: dedup literals, drop tautologies
        Clause dedup;
        bool tautology = false;
        for (Literal lit : current) {
          bool dup = false;
          for (Literal seen : dedup) {
            if (seen == lit) dup = true;
            if (seen == lit.negated()) tautology = true;
          }
          if (!dup) dedup.push_back(lit);
        }
        if (tautology)
          ++result.tautologies_dropped;
        else
          f.clauses.push_back(std::move(dedup));
        current.clear();
      } else {
        const long av = v < 0 ? -v : v;
        if (av > f.num_vars)
          fail("literal " + tok + " exceeds declared variable count " +
               std::to_string(f.num_vars));
        current.push_back(Literal(static_cast<int>(v)));
      }
    }
  }

  if (!seen_header) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("unterminated clause at end of input");
  if (raw_clauses != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses but input contains " +
                     std::to_string(raw_clauses));
  return result;
}

inline ParseResult parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

inline ParseResult parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& cl : f.clauses) {
    for (Literal lit : cl) out << lit.dimacs() << ' ';
    out << "0\n";
  }
}

inline std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  write_dimacs(out, f);
  return out.str();
}

}  // namespace bpsat
