#include "qens/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace qens {

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::constant: return "constant";
    case OracleKind::balanced: return "balanced";
    case OracleKind::general: return "general";
  }
  throw std::invalid_argument("unknown oracle kind");
}

BooleanOracle::BooleanOracle(int arity, std::vector<std::uint8_t> truth_table, OracleKind kind)
    : arity_(arity), truth_table_(std::move(truth_table)), kind_(kind) {
  if (arity < 1 || arity > 63) throw std::invalid_argument("oracle arity out of range");
  const std::uint64_t expected = 1ULL << arity;
  if (truth_table_.size() != expected)
    throw std::invalid_argument("truth table size must be 2^arity");
  for (const auto v : truth_table_)
    if (v != 0 && v != 1) throw std::invalid_argument("truth table entries must be 0 or 1");
  ones_count_ = static_cast<std::uint64_t>(
      std::count(truth_table_.begin(), truth_table_.end(), std::uint8_t{1}));
  if (kind_ == OracleKind::constant && ones_count_ != 0 && ones_count_ != expected)
    throw std::invalid_argument("constant oracle must map every input to the same value");
  if (kind_ == OracleKind::balanced && ones_count_ * 2 != expected)
    throw std::invalid_argument("balanced oracle must map exactly half the inputs to 1");
}

Real BooleanOracle::zero_fraction() const {
  return static_cast<Real>(table_size() - ones_count_) / static_cast<Real>(table_size());
}

BooleanOracle make_constant_oracle(int arity, int value) {
  if (value != 0 && value != 1) throw std::invalid_argument("constant oracle value must be 0 or 1");
  if (arity < 1 || arity > 63) throw std::invalid_argument("oracle arity out of range");
  std::vector<std::uint8_t> table(1ULL << arity, static_cast<std::uint8_t>(value));
  return BooleanOracle(arity, std::move(table), OracleKind::constant);
}

BooleanOracle make_balanced_oracle(int arity, std::uint64_t parity_mask) {
  if (arity < 1 || arity > 63) throw std::invalid_argument("oracle arity out of range");
  if (parity_mask == 0 || (parity_mask >> arity) != 0)
    throw std::invalid_argument("parity mask must be nonzero and fit the arity");
  const std::uint64_t size = 1ULL << arity;
  std::vector<std::uint8_t> table(size);
  for (std::uint64_t x = 0; x < size; ++x)
    table[x] = static_cast<std::uint8_t>(std::popcount(x & parity_mask) & 1);
  return BooleanOracle(arity, std::move(table), OracleKind::balanced);
}

BooleanOracle make_balanced_oracle(int arity, const std::vector<std::uint64_t>& ones_subset) {
  if (arity < 1 || arity > 63) throw std::invalid_argument("oracle arity out of range");
  const std::uint64_t size = 1ULL << arity;
  if (ones_subset.size() * 2 != size)
    throw std::invalid_argument("ones subset must contain exactly half of the inputs");
  std::vector<std::uint8_t> table(size, 0);
  for (const std::uint64_t x : ones_subset) {
    if (x >= size) throw std::invalid_argument("ones subset entry out of range");
    if (table[x]) throw std::invalid_argument("ones subset entries must be distinct");
    table[x] = 1;
  }
  return BooleanOracle(arity, std::move(table), OracleKind::balanced);
}

BooleanOracle make_general_oracle(int arity, std::vector<std::uint8_t> truth_table) {
  return BooleanOracle(arity, std::move(truth_table), OracleKind::general);
}

namespace {

std::vector<std::uint64_t> parse_int_list(const std::string& body) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(body.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("oracle spec: bad integer in list '" + body + "'");
    }
    out.push_back(v);
    pos += used;
    if (pos < body.size()) {
      if (body[pos] != ',') throw std::invalid_argument("oracle spec: expected ',' in list");
      ++pos;
    }
  }
  if (out.empty()) throw std::invalid_argument("oracle spec: empty integer list");
  return out;
}

}  // namespace

BooleanOracle parse_oracle(int arity, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("oracle spec must look like 'constant:0' or 'balanced:mask=5'");
  const std::string head = spec.substr(0, colon);
  const std::string tail = spec.substr(colon + 1);
  if (head == "constant") {
    if (tail == "0") return make_constant_oracle(arity, 0);
    if (tail == "1") return make_constant_oracle(arity, 1);
    throw std::invalid_argument("constant oracle value must be 0 or 1");
  }
  if (head == "balanced") {
    const auto eq = tail.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("balanced oracle spec needs 'mask=<int>' or 'subset=<list>'");
    const std::string key = tail.substr(0, eq);
    const std::string body = tail.substr(eq + 1);
    if (key == "mask") {
      const auto values = parse_int_list(body);
      if (values.size() != 1) throw std::invalid_argument("balanced mask takes a single integer");
      return make_balanced_oracle(arity, values[0]);
    }
    if (key == "subset") return make_balanced_oracle(arity, parse_int_list(body));
    throw std::invalid_argument("unknown balanced oracle key '" + key + "'");
  }
  throw std::invalid_argument("unknown oracle family '" + head + "'");
}

}  // namespace qens
