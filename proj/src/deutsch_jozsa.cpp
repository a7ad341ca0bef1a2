#include "qens/deutsch_jozsa.hpp"

#include <cmath>

namespace qens {

namespace {

void check_register(const BooleanOracle& oracle) {
  if (oracle.arity() + 1 > kMaxQubits)
    throw std::invalid_argument("oracle arity exceeds the simulable register size");
}

// |0...0,1> -> Hadamard everything: the shared preparation of both runs.
StateVector prepared_state(int n) {
  return apply_hadamard_layer(new_basis_state(n + 1, 1), first_qubits(n + 1));
}

StateVector apply_oracle_last(StateVector state, const BooleanOracle& oracle) {
  const int n = oracle.arity();
  return apply_boolean_oracle(std::move(state), oracle, first_qubits(n), QubitIndex{n});
}

// Probability that the first n qubits all read 0 (i.e. basis index < 2).
Real p_all_zeros_first_n(const StateVector& state) {
  return std::norm(state.amplitude(0)) + std::norm(state.amplitude(1));
}

bool states_close(const StateVector& a, const StateVector& b, Real tol) {
  if (a.num_qubits() != b.num_qubits()) return false;
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

// Equality modulo one overall phase factor.
bool states_close_up_to_phase(const StateVector& a, const StateVector& b, Real tol) {
  if (a.num_qubits() != b.num_qubits()) return false;
  Eigen::Index pivot = 0;
  a.amplitudes().cwiseAbs().maxCoeff(&pivot);
  const Complex ap = a.amplitudes()[pivot];
  const Complex bp = b.amplitudes()[pivot];
  if (std::abs(ap) < tol) return states_close(a, b, tol);
  const Complex phase = bp / ap;
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return ((a.amplitudes() * phase) - b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

// Output-frame change: turns the oracle value carried as a phase against
// |-> into an explicit output bit.
StateVector to_bit_frame(StateVector state, const BooleanOracle& oracle) {
  const int n = oracle.arity();
  const QubitIndex out{n};
  state = apply_oracle_last(std::move(state), oracle);            // undo the kickback
  state = apply_gate(std::move(state), SingleQubitGate::hadamard(), out);  // |-> -> |1>
  state = apply_gate(std::move(state), SingleQubitGate::pauli_x(), out);   // -> |0>
  return apply_oracle_last(std::move(state), oracle);             // write g(x)
}

}  // namespace

DJOutcome run_deutsch_jozsa(const BooleanOracle& oracle) {
  if (oracle.kind() == OracleKind::general)
    throw std::invalid_argument("the promise run requires a constant or balanced oracle");
  check_register(oracle);
  const int n = oracle.arity();
  StateVector state = prepared_state(n);
  state = apply_oracle_last(std::move(state), oracle);
  state = apply_hadamard_layer(std::move(state), first_qubits(n));
  const Real p = p_all_zeros_first_n(state);
  return DJOutcome{p, p > 0.5 ? OracleKind::constant : OracleKind::balanced};
}

StateVector apply_A_DJ(StateVector state, const BooleanOracle& oracle) {
  const int n = oracle.arity();
  if (state.num_qubits() != n + 1)
    throw std::invalid_argument("state must have oracle arity + 1 qubits");
  const QubitIndex out{n};
  state = apply_gate(std::move(state), SingleQubitGate::hadamard(), out);
  state = apply_gate(std::move(state), SingleQubitGate::pauli_x(), out);
  state = apply_oracle_last(std::move(state), oracle);
  return apply_hadamard_layer(std::move(state), first_qubits(n));
}

Real run_qensemble_dj(const BooleanOracle& oracle) {
  check_register(oracle);
  const int n = oracle.arity();
  StateVector state = prepared_state(n);
  state = apply_A_DJ(std::move(state), oracle);
  state = apply_hadamard_layer(std::move(state), first_qubits(n));
  return marginal_probability(state, QubitIndex{n}, 0);
}

bool congruence_check(const BooleanOracle& oracle) {
  check_register(oracle);
  const int n = oracle.arity();
  const Real tol = kNormTol;

  // Reference interferometric run, step by step.
  const StateVector ref0 = new_basis_state(n + 1, 1);
  const StateVector ref1 = apply_hadamard_layer(ref0, first_qubits(n + 1));
  const StateVector ref2 = apply_oracle_last(ref1, oracle);
  const StateVector ref3 = apply_hadamard_layer(ref2, first_qubits(n));

  // Recast run.
  const StateVector emb0 = new_basis_state(n + 1, 1);
  const StateVector emb1 = apply_hadamard_layer(emb0, first_qubits(n + 1));
  const StateVector emb2 = apply_A_DJ(emb1, oracle);
  const StateVector emb3 = apply_hadamard_layer(emb2, first_qubits(n));

  bool ok = states_close_up_to_phase(emb0, ref0, tol) &&
            states_close_up_to_phase(emb1, ref1, tol);

  // Frame correspondence of the intermediate states.
  const StateVector ref2_bit = to_bit_frame(ref2, oracle);
  ok = ok && states_close_up_to_phase(ref2_bit, emb3, tol);
  ok = ok &&
       states_close_up_to_phase(apply_hadamard_layer(ref2_bit, first_qubits(n)), emb2, tol);

  // Measurement congruence against closed forms.
  Real alternating_sum = 0.0;
  for (std::uint64_t x = 0; x < oracle.table_size(); ++x)
    alternating_sum += oracle.value(x) ? -1.0 : 1.0;
  const Real mean = alternating_sum / static_cast<Real>(oracle.table_size());
  const Real p_zeros = p_all_zeros_first_n(ref3);
  ok = ok && std::abs(p_zeros - mean * mean) <= tol;

  const Real p_f0 = marginal_probability(emb3, QubitIndex{n}, 0);
  ok = ok && std::abs(p_f0 - oracle.zero_fraction()) <= tol;

  // Verdict congruence under the promise: all-zeros certainty on one side,
  // truth-table zero fraction pinned to {0, 1/2, 1} on the other.
  if (oracle.kind() == OracleKind::constant)
    ok = ok && p_zeros > 0.5 && (p_f0 > 1.0 - tol || p_f0 < tol);
  if (oracle.kind() == OracleKind::balanced)
    ok = ok && p_zeros < 0.5 && std::abs(p_f0 - 0.5) <= tol;

  return ok;
}

}  // namespace qens
