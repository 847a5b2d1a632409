#pragma once

#include <cassert>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpsat {

namespace detail {

// whole-token decimal integer, rejects partial parses
inline bool parse_int(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtol(tok.c_str(), &end, 10);
  return errno == 0 && end == tok.c_str() + tok.size();
}

}  // namespace detail

// One signed literal. Variables are 1-based, as in DIMACS.
class Literal {
public:
  explicit Literal(int dimacs) : code_(dimacs) { assert(dimacs != 0); }
  Literal(int var, bool positive) : code_(positive ? var : -var) {
    assert(var > 0);
  }

  int var() const { return code_ < 0 ? -code_ : code_; }
  bool positive() const { return code_ > 0; }
  int dimacs() const { return code_; }
  Literal negated() const { return Literal(-code_); }

  friend bool operator==(Literal a, Literal b) = default;

private:
  int code_;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// Total assignment for variables 1..num_vars.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(int num_vars) : values_(num_vars, 0) {}

  int num_vars() const { return static_cast<int>(values_.size()); }

  bool value(int var) const {
    assert(var >= 1 && var <= num_vars());
    return values_[var - 1] != 0;
  }

  void set(int var, bool v) {
    assert(var >= 1 && var <= num_vars());
    values_[var - 1] = v ? 1 : 0;
  }

  // "0101..." , one character per variable 1..n
  std::string bits() const {
    std::string s(values_.size(), '0');
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i]) s[i] = '1';
    return s;
  }

  static Assignment from_bits(const std::string& s) {
    Assignment a(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1')
        throw std::invalid_argument("Assignment::from_bits: bad character");
      a.values_[i] = s[i] == '1' ? 1 : 0;
    }
    return a;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::vector<std::uint8_t> values_;
};

inline bool literal_true(Literal lit, const Assignment& a) {
  return a.value(lit.var()) == lit.positive();
}

struct VerifyResult {
  bool satisfied = false;
  std::size_t failing_clause = 0;  // 0-based index, valid when !satisfied
};

inline VerifyResult verify(const CnfFormula& f, const Assignment& a) {
  if (a.num_vars() != f.num_vars)
    throw std::invalid_argument("verify: assignment covers " +
                                std::to_string(a.num_vars()) +
                                " variables, formula has " +
                                std::to_string(f.num_vars));
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    bool sat = false;
    for (Literal lit : f.clauses[c]) {
      if (literal_true(lit, a)) {
        sat = true;
        break;
      }
    }
    if (!sat) return {false, c};
  }
  return {true, 0};
}

// flags[var] != 0 iff var occurs in some clause; index 0 unused
inline std::vector<std::uint8_t> used_vars(const CnfFormula& f) {
  std::vector<std::uint8_t> flags(f.num_vars + 1, 0);
  for (const Clause& cl : f.clauses)
    for (Literal lit : cl) flags[lit.var()] = 1;
  return flags;
}

inline constexpr int kCountModelsMaxVars = 26;

// Exact model count by exhaustive enumeration. Evaluates clauses through
// per-clause bit masks, a separate route from verify()'s literal loop.
inline std::uint64_t count_models(const CnfFormula& f) {
  if (f.num_vars > kCountModelsMaxVars)
    throw std::invalid_argument("count_models: " + std::to_string(f.num_vars) +
                                " variables exceeds enumeration guard of " +
                                std::to_string(kCountModelsMaxVars));
  const std::size_t m = f.clauses.size();
  std::vector<std::uint32_t> pos(m, 0), neg(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (Literal lit : f.clauses[c]) {
      const std::uint32_t bit = 1u << (lit.var() - 1);
      if (lit.positive())
        pos[c] |= bit;
      else
        neg[c] |= bit;
    }
  }
  const std::uint64_t total = 1ull << f.num_vars;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool ok = true;
    for (std::size_t c = 0; c < m; ++c) {
      if ((pos[c] & mask) == 0 && (neg[c] & ~mask) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace bpsat
