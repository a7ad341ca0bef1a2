#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qens/types.hpp"

namespace qens {

enum class OracleKind { constant, balanced, general };

std::string to_string(OracleKind kind);

// Total boolean function g : {0,1}^n -> {0,1} with a declared promise kind.
// Truth-table index x assembles the input bits most-significant-first, i.e.
// the first input qubit contributes the highest bit of x.
class BooleanOracle {
 public:
  // Validates table size (2^arity) and the declared promise: a constant
  // oracle's table must be all-equal, a balanced one exactly half ones.
  BooleanOracle(int arity, std::vector<std::uint8_t> truth_table, OracleKind kind);

  int arity() const { return arity_; }
  OracleKind kind() const { return kind_; }
  std::uint64_t table_size() const { return truth_table_.size(); }
  const std::vector<std::uint8_t>& truth_table() const { return truth_table_; }

  int value(std::uint64_t x) const { return truth_table_[x]; }

  std::uint64_t ones_count() const { return ones_count_; }

  // Fraction of inputs mapped to 0: 1 or 0 for constant, 1/2 for balanced.
  Real zero_fraction() const;

 private:
  int arity_;
  std::vector<std::uint8_t> truth_table_;
  OracleKind kind_;
  std::uint64_t ones_count_;
};

BooleanOracle make_constant_oracle(int arity, int value);

// g(x) = <x, mask> mod 2; any nonzero mask yields a balanced function.
BooleanOracle make_balanced_oracle(int arity, std::uint64_t parity_mask);

// Explicit construction from the set of inputs mapped to 1; the set must
// contain exactly half of all inputs.
BooleanOracle make_balanced_oracle(int arity, const std::vector<std::uint64_t>& ones_subset);

BooleanOracle make_general_oracle(int arity, std::vector<std::uint8_t> truth_table);

// Mini-language used by the command-line tool and handy in tests:
//   "constant:0" | "constant:1" | "balanced:mask=<int>" | "balanced:subset=<i,j,...>"
BooleanOracle parse_oracle(int arity, const std::string& spec);

}  // namespace qens
