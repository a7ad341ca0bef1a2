#pragma once

#include "qens/statevector.hpp"

namespace qens {

struct DJOutcome {
  Real p_all_zeros;    // probability of reading all zeros on the input register
  OracleKind verdict;  // constant iff p_all_zeros > 1/2
};

// Textbook interferometric run on n+1 qubits: prepare |0...0,1>, Hadamard
// everything, query the oracle once (inputs = qubits 0..n-1, target = n),
// Hadamard the input register, read p(|0>^n). Requires a promise oracle
// (kind constant or balanced); p_all_zeros is exactly 1 or 0 respectively.
DJOutcome run_deutsch_jozsa(const BooleanOracle& oracle);

// The same single-query circuit recast so the oracle answer lands in the
// output qubit as a bit value instead of a phase. Reading right to left:
//   A = (H^n x I) . U_g . (I^n x X) . (I^n x H)
// Acting on the uniform superposition over all n+1 qubits it produces
// sum_x |x>|g(x)> / sqrt(2^n) after the follow-up Hadamard layer on the
// input register (which undoes the (H^n x I) factor).
StateVector apply_A_DJ(StateVector state, const BooleanOracle& oracle);

// Full recast pipeline: |0...0,1> -> Hadamard everything -> A -> Hadamard
// input register -> p(output qubit = 0). Equals the zero fraction of the
// oracle's truth table: 1 or 0 for constant oracles, 1/2 for balanced ones.
// Accepts general oracles as well.
Real run_qensemble_dj(const BooleanOracle& oracle);

// Verifies step-by-step that the recast pipeline is the reference run in a
// different output frame. The reference run carries g(x) as a phase against
// a |-> output qubit; the recast run carries it as an explicit bit. The two
// are related, state by state, by the fixed frame change
//   F = U_g . (I x X) . (I x H) . U_g
// on the output qubit (plus at most a global phase). Checks, all within
// 1e-10: the prepared and post-Hadamard states agree; F maps the reference
// post-oracle state onto the recast final state; the recast post-A state is
// the Hadamard image of that; the reference all-zeros probability matches
// its closed form |2^-n sum_x (-1)^g(x)|^2; the recast output-bit
// probability matches the truth-table zero fraction; and for promise
// oracles the two verdicts agree.
bool congruence_check(const BooleanOracle& oracle);

}  // namespace qens
