#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qens/models.hpp"
#include "qens/statevector.hpp"

namespace qens {

// Finite parameter grid: num_params groups of bits_per_param bits, read
// most-significant group first. A b-bit group with value k decodes to the
// grid point -1 + 2k / (2^b - 1), so the endpoints are exactly -1 and +1.
struct ParameterCode {
  int num_params = 1;
  int bits_per_param = 1;
  int total_bits() const { return num_params * bits_per_param; }
  std::uint64_t code_count() const { return 1ULL << total_bits(); }
};

void validate(const ParameterCode& pc);

RealVector decode_theta(std::uint64_t code, const ParameterCode& pc);
RealVector decode_theta(const std::string& bits, const ParameterCode& pc);

// Oracle over the parameter register for a fixed input point: the table
// entry at code c is 1 when the decoded model predicts +1 on x, 0 when it
// predicts -1 (output bit 0 <-> class -1 throughout).
BooleanOracle build_classifier_oracle(ModelFamily family, const ParameterCode& pc,
                                      const RealVector& x,
                                      int hidden_width = kDefaultHiddenWidth);

// Superposition over the parameter register plus one trailing output qubit,
// with per-model weights carried by the amplitudes:
// |amplitude(code, f)|^2 = w_code / E on the realized branch.
struct WeightedEnsembleState {
  StateVector state;
  RealVector weights;      // w_code >= 0, indexed by parameter code
  Real normalizer = 0.0;   // E = sum of weights
  int num_theta_qubits = 0;
  RealVector predictions;  // +-1 per code; empty until a classifier is applied
  QubitIndex output_qubit() const { return QubitIndex{num_theta_qubits}; }
};

// sum_code sqrt(w/E) |code>|0>.
WeightedEnsembleState make_weighted_ensemble_state(const RealVector& weights);

// Routes every parameter branch through the classifier oracle, flipping the
// output qubit where the model predicts +1, and records the per-code
// predictions. The output qubit must still be |0> on every branch.
WeightedEnsembleState apply_A(WeightedEnsembleState ens, const BooleanOracle& classifier);

// Full accuracy-weighted construction for input x_tilde: every grid model
// is weighted by its training accuracy on data (loaded into an extra flag
// qubit, postselected on |0> and dropped), then classified. Postselection
// fails loudly if every grid model has zero accuracy.
WeightedEnsembleState accuracy_weighted_state(ModelFamily family, const ParameterCode& pc,
                                              const Dataset& data, const RealVector& x_tilde,
                                              int hidden_width = kDefaultHiddenWidth);

struct EnsembleResult {
  Real p_minus = 0.0;  // p(output qubit = 0), the class -1 weight share
  Real p_plus = 0.0;   // p(output qubit = 1)
  Real label = 0.0;    // sign(p_plus - p_minus), ties to +1
  struct PerModel {
    std::uint64_t code = 0;
    Real weight = 0.0;
    Real prediction = 0.0;
  };
  std::vector<PerModel> per_model;
};

// Reads the ensemble vote off the output qubit.
EnsembleResult measure_prediction(const WeightedEnsembleState& ens);

// Exact classical route to the same pair: (p_minus, p_plus) of the weighted
// vote, for cross-checking the simulated value.
std::pair<Real, Real> exact_ensemble_probabilities(const RealVector& weights,
                                                   const RealVector& predictions);

// Marginal distribution over the parameter register.
RealVector theta_distribution(const WeightedEnsembleState& ens);

}  // namespace qens
