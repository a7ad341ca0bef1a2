#include "qens/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qens {

std::vector<QubitIndex> first_qubits(int count) {
  std::vector<QubitIndex> qs;
  qs.reserve(static_cast<std::size_t>(count));
  for (int q = 0; q < count; ++q) qs.push_back(QubitIndex{q});
  return qs;
}

SingleQubitGate::SingleQubitGate(const Eigen::Matrix2cd& matrix) : matrix_(matrix) {
  if (unitarity_error() > kAlgebraTol)
    throw std::invalid_argument("single-qubit gate matrix is not unitary");
}

SingleQubitGate SingleQubitGate::hadamard() {
  const Real s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  m << s, s, s, -s;
  return SingleQubitGate(m);
}

SingleQubitGate SingleQubitGate::pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return SingleQubitGate(m);
}

SingleQubitGate SingleQubitGate::ry(Real angle) {
  const Real c = std::cos(angle / 2.0);
  const Real s = std::sin(angle / 2.0);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return SingleQubitGate(m);
}

Real SingleQubitGate::unitarity_error() const {
  const Eigen::Matrix2cd residual =
      matrix_ * matrix_.adjoint() - Eigen::Matrix2cd::Identity();
  return residual.cwiseAbs().maxCoeff();
}

namespace {

void check_qubit(int num_qubits, QubitIndex q, const char* what) {
  if (q.value < 0 || q.value >= num_qubits)
    throw std::invalid_argument(std::string(what) + " qubit index out of range");
}

void check_outcome(int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("measurement outcome must be 0 or 1");
}

}  // namespace

StateVector::StateVector(int num_qubits, Amplitudes amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits)
    throw std::invalid_argument("qubit count must be between 1 and " +
                                std::to_string(kMaxQubits));
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits_))
    throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
  if (norm_error() > kNormTol)
    throw std::invalid_argument("amplitude vector is not normalized");
}

Real StateVector::norm_error() const { return std::abs(amplitudes_.squaredNorm() - 1.0); }

StateVector new_basis_state(int num_qubits, std::uint64_t basis_index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("qubit count must be between 1 and " +
                                std::to_string(kMaxQubits));
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (basis_index >= static_cast<std::uint64_t>(dim))
    throw std::invalid_argument("basis index out of range");
  Amplitudes amps = Amplitudes::Zero(dim);
  amps[static_cast<Eigen::Index>(basis_index)] = Complex{1.0, 0.0};
  return StateVector(num_qubits, std::move(amps));
}

StateVector from_amplitudes(Amplitudes amplitudes) {
  const auto size = static_cast<std::uint64_t>(amplitudes.size());
  if (size < 2 || !std::has_single_bit(size))
    throw std::invalid_argument("amplitude vector length must be a power of two >= 2");
  return StateVector(std::bit_width(size) - 1, std::move(amplitudes));
}

StateVector apply_gate(StateVector state, const SingleQubitGate& gate, QubitIndex target) {
  check_qubit(state.num_qubits_, target, "gate target");
  const Eigen::Matrix2cd& m = gate.matrix();
  const std::uint64_t mask = 1ULL << bit_position(state.num_qubits_, target);
  const auto dim = static_cast<std::uint64_t>(state.amplitudes_.size());
  auto& a = state.amplitudes_;
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (k & mask) continue;
    const Complex a0 = a[static_cast<Eigen::Index>(k)];
    const Complex a1 = a[static_cast<Eigen::Index>(k | mask)];
    a[static_cast<Eigen::Index>(k)] = m(0, 0) * a0 + m(0, 1) * a1;
    a[static_cast<Eigen::Index>(k | mask)] = m(1, 0) * a0 + m(1, 1) * a1;
  }
  return state;
}

StateVector apply_hadamard_layer(StateVector state, const std::vector<QubitIndex>& targets) {
  std::vector<bool> seen(static_cast<std::size_t>(state.num_qubits()), false);
  const SingleQubitGate h = SingleQubitGate::hadamard();
  for (const QubitIndex q : targets) {
    check_qubit(state.num_qubits(), q, "hadamard layer");
    if (seen[static_cast<std::size_t>(q.value)])
      throw std::invalid_argument("hadamard layer targets must be distinct");
    seen[static_cast<std::size_t>(q.value)] = true;
    state = apply_gate(std::move(state), h, q);
  }
  return state;
}

StateVector apply_boolean_oracle(StateVector state, const BooleanOracle& oracle,
                                 const std::vector<QubitIndex>& inputs, QubitIndex target) {
  const int n = state.num_qubits_;
  check_qubit(n, target, "oracle target");
  if (static_cast<int>(inputs.size()) != oracle.arity())
    throw std::invalid_argument("oracle input count must match its arity");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> shifts;  // bit position of each input, MSB-first oracle order
  shifts.reserve(inputs.size());
  for (const QubitIndex q : inputs) {
    check_qubit(n, q, "oracle input");
    if (seen[static_cast<std::size_t>(q.value)])
      throw std::invalid_argument("oracle input qubits must be distinct");
    seen[static_cast<std::size_t>(q.value)] = true;
    shifts.push_back(bit_position(n, q));
  }
  if (seen[static_cast<std::size_t>(target.value)])
    throw std::invalid_argument("oracle target must not be an input qubit");

  const std::uint64_t tmask = 1ULL << bit_position(n, target);
  const auto dim = static_cast<std::uint64_t>(state.amplitudes_.size());
  auto& a = state.amplitudes_;
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (k & tmask) continue;
    std::uint64_t x = 0;
    for (const int s : shifts) x = (x << 1) | ((k >> s) & 1ULL);
    if (oracle.value(x))
      std::swap(a[static_cast<Eigen::Index>(k)], a[static_cast<Eigen::Index>(k | tmask)]);
  }
  return state;
}

StateVector amplitude_encode(const RealVector& weights, int extra_qubits) {
  const auto count = static_cast<std::uint64_t>(weights.size());
  if (count < 1 || !std::has_single_bit(count))
    throw std::invalid_argument("weight count must be a power of two");
  if (extra_qubits < 0) throw std::invalid_argument("extra qubit count must be nonnegative");
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("weights must be nonnegative");
  const Real total = weights.sum();
  if (!(total > 0.0)) throw std::invalid_argument("at least one weight must be positive");

  const int weight_qubits = std::bit_width(count) - 1;
  const int num_qubits = weight_qubits + extra_qubits;
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("total qubit count out of range");
  Amplitudes amps = Amplitudes::Zero(Eigen::Index{1} << num_qubits);
  for (std::uint64_t k = 0; k < count; ++k)
    amps[static_cast<Eigen::Index>(k << extra_qubits)] =
        Complex{std::sqrt(weights[static_cast<Eigen::Index>(k)] / total), 0.0};
  return StateVector(num_qubits, std::move(amps));
}

Real marginal_probability(const StateVector& state, QubitIndex qubit, int outcome) {
  check_qubit(state.num_qubits(), qubit, "marginal");
  check_outcome(outcome);
  const std::uint64_t mask = 1ULL << bit_position(state.num_qubits(), qubit);
  const auto dim = static_cast<std::uint64_t>(state.dim());
  Real p = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k)
    if (((k & mask) != 0) == (outcome == 1))
      p += std::norm(state.amplitude(k));
  return p;
}

StateVector postselect(StateVector state, QubitIndex qubit, int outcome) {
  check_qubit(state.num_qubits_, qubit, "postselect");
  check_outcome(outcome);
  const Real p = marginal_probability(state, qubit, outcome);
  if (p < kMinBranchProb)
    throw PostselectError("postselected branch has (near-)zero probability");
  const std::uint64_t mask = 1ULL << bit_position(state.num_qubits_, qubit);
  const auto dim = static_cast<std::uint64_t>(state.amplitudes_.size());
  const Real scale = 1.0 / std::sqrt(p);
  auto& a = state.amplitudes_;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const bool keep = ((k & mask) != 0) == (outcome == 1);
    a[static_cast<Eigen::Index>(k)] = keep ? a[static_cast<Eigen::Index>(k)] * scale
                                           : Complex{0.0, 0.0};
  }
  return state;
}

StateVector drop_qubit(StateVector state, QubitIndex qubit, int outcome) {
  check_qubit(state.num_qubits_, qubit, "drop");
  check_outcome(outcome);
  if (state.num_qubits_ < 2)
    throw std::invalid_argument("cannot drop the only qubit of a register");
  const Real off_branch = marginal_probability(state, qubit, 1 - outcome);
  if (off_branch > kNormTol)
    throw std::invalid_argument("dropped qubit is not deterministically in the given outcome");

  const int pos = bit_position(state.num_qubits_, qubit);
  const std::uint64_t low_mask = (1ULL << pos) - 1;
  const std::uint64_t fixed = (outcome == 1) ? (1ULL << pos) : 0;
  const auto new_dim = static_cast<std::uint64_t>(state.amplitudes_.size()) >> 1;
  Amplitudes amps(static_cast<Eigen::Index>(new_dim));
  for (std::uint64_t m = 0; m < new_dim; ++m) {
    const std::uint64_t k = ((m & ~low_mask) << 1) | fixed | (m & low_mask);
    amps[static_cast<Eigen::Index>(m)] = state.amplitudes_[static_cast<Eigen::Index>(k)];
  }
  return StateVector(state.num_qubits_ - 1, std::move(amps));
}

}  // namespace qens
