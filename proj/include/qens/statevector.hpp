#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qens/oracle.hpp"
#include "qens/types.hpp"

namespace qens {

// Qubit addressing convention, used consistently everywhere: qubit 0 is the
// leftmost symbol of a ket |q0 q1 ... q_{n-1}> and therefore the MOST
// significant bit of the amplitude index. Qubit q of an n-qubit register
// lives at bit position n-1-q of the index.
struct QubitIndex {
  int value = 0;
};

inline int bit_position(int num_qubits, QubitIndex q) { return num_qubits - 1 - q.value; }

inline int index_bit(std::uint64_t basis_index, int num_qubits, QubitIndex q) {
  return static_cast<int>((basis_index >> bit_position(num_qubits, q)) & 1ULL);
}

// Qubits [0, count).
std::vector<QubitIndex> first_qubits(int count);

// Requested postselection branch carries (essentially) zero probability.
struct PostselectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 2x2 unitary. The constructor rejects matrices that fail the unitarity
// check, so a constructed gate is always safe to apply.
class SingleQubitGate {
 public:
  explicit SingleQubitGate(const Eigen::Matrix2cd& matrix);

  static SingleQubitGate hadamard();
  static SingleQubitGate pauli_x();
  // Ry(angle) = [[cos(a/2), -sin(a/2)], [sin(a/2), cos(a/2)]].
  static SingleQubitGate ry(Real angle);

  const Eigen::Matrix2cd& matrix() const { return matrix_; }

  // max-abs entry of U U^dagger - I.
  Real unitarity_error() const;

 private:
  Eigen::Matrix2cd matrix_;
};

// Normalized dense state over num_qubits qubits (2^num_qubits amplitudes).
// The constructor validates dimension and norm; operations below preserve
// the norm, so a StateVector is normalized at all times.
class StateVector {
 public:
  StateVector(int num_qubits, Amplitudes amplitudes);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t basis_index) const {
    return amplitudes_[static_cast<Eigen::Index>(basis_index)];
  }

  // | ||psi||^2 - 1 |
  Real norm_error() const;

  friend StateVector apply_gate(StateVector state, const SingleQubitGate& gate, QubitIndex target);
  friend StateVector apply_boolean_oracle(StateVector state, const BooleanOracle& oracle,
                                          const std::vector<QubitIndex>& inputs,
                                          QubitIndex target);
  friend StateVector postselect(StateVector state, QubitIndex qubit, int outcome);
  friend StateVector drop_qubit(StateVector state, QubitIndex qubit, int outcome);

 private:
  int num_qubits_;
  Amplitudes amplitudes_;
};

// |basis_index> over num_qubits qubits.
StateVector new_basis_state(int num_qubits, std::uint64_t basis_index);

// Infers the qubit count from the length (must be a power of two >= 2) and
// validates normalization.
StateVector from_amplitudes(Amplitudes amplitudes);

StateVector apply_gate(StateVector state, const SingleQubitGate& gate, QubitIndex target);

// Hadamard on each listed qubit (targets must be distinct).
StateVector apply_hadamard_layer(StateVector state, const std::vector<QubitIndex>& targets);

// |x, y> -> |x, y XOR g(x)>; inputs[0] is the most significant oracle bit,
// target must not appear among the inputs.
StateVector apply_boolean_oracle(StateVector state, const BooleanOracle& oracle,
                                 const std::vector<QubitIndex>& inputs, QubitIndex target);

// State sum_k sqrt(w_k / sum w) |k> |0...0> with extra_qubits trailing zero
// qubits. Weight count must be a power of two; weights nonnegative, not all
// zero.
StateVector amplitude_encode(const RealVector& weights, int extra_qubits);

// p(qubit = outcome), outcome in {0, 1}.
Real marginal_probability(const StateVector& state, QubitIndex qubit, int outcome);

// Projects onto the given outcome and renormalizes; throws PostselectError
// if the branch probability is below kMinBranchProb.
StateVector postselect(StateVector state, QubitIndex qubit, int outcome);

// Removes a qubit that is deterministically in |outcome| (e.g. right after
// postselecting it), contracting the register by one qubit.
StateVector drop_qubit(StateVector state, QubitIndex qubit, int outcome);

}  // namespace qens
