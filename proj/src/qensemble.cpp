#include "qens/qensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace qens {

void validate(const ParameterCode& pc) {
  if (pc.num_params < 1) throw std::invalid_argument("parameter count must be positive");
  if (pc.bits_per_param < 1) throw std::invalid_argument("bits per parameter must be positive");
  if (pc.total_bits() > kMaxTotalBits)
    throw std::invalid_argument("parameter register exceeds " +
                                std::to_string(kMaxTotalBits) + " bits");
}

RealVector decode_theta(std::uint64_t code, const ParameterCode& pc) {
  validate(pc);
  if (code >= pc.code_count()) throw std::invalid_argument("parameter code out of range");
  const int b = pc.bits_per_param;
  const std::uint64_t group_mask = (1ULL << b) - 1;
  const Real step = 2.0 / static_cast<Real>(group_mask);
  RealVector theta(pc.num_params);
  for (int j = 0; j < pc.num_params; ++j) {
    const std::uint64_t k = (code >> ((pc.num_params - 1 - j) * b)) & group_mask;
    theta[j] = -1.0 + step * static_cast<Real>(k);
  }
  return theta;
}

RealVector decode_theta(const std::string& bits, const ParameterCode& pc) {
  validate(pc);
  if (static_cast<int>(bits.size()) != pc.total_bits())
    throw std::invalid_argument("bit string length must equal the total bit count");
  std::uint64_t code = 0;
  for (const char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0/1");
    code = (code << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return decode_theta(code, pc);
}

BooleanOracle build_classifier_oracle(ModelFamily family, const ParameterCode& pc,
                                      const RealVector& x, int hidden_width) {
  validate(pc);
  const int d = static_cast<int>(x.size());
  if (parameter_count(family, d, hidden_width) != pc.num_params)
    throw std::invalid_argument("grid parameter count does not match the model family");
  const std::uint64_t codes = pc.code_count();
  std::vector<std::uint8_t> table(codes);
  for (std::uint64_t c = 0; c < codes; ++c) {
    const ModelSpec spec =
        make_model_spec(family, decode_theta(c, pc), d, hidden_width);
    table[c] = predict(spec, x) > 0.0 ? 1 : 0;
  }
  return make_general_oracle(pc.total_bits(), std::move(table));
}

WeightedEnsembleState make_weighted_ensemble_state(const RealVector& weights) {
  StateVector state = amplitude_encode(weights, 1);
  WeightedEnsembleState ens{std::move(state), weights, weights.sum(),
                            0, RealVector()};
  ens.num_theta_qubits = ens.state.num_qubits() - 1;
  return ens;
}

WeightedEnsembleState apply_A(WeightedEnsembleState ens, const BooleanOracle& classifier) {
  if (classifier.arity() != ens.num_theta_qubits)
    throw std::invalid_argument("classifier arity must match the parameter register");
  if (marginal_probability(ens.state, ens.output_qubit(), 1) > kNormTol)
    throw std::invalid_argument("output qubit must be |0> before classification");
  ens.state = apply_boolean_oracle(std::move(ens.state), classifier,
                                   first_qubits(ens.num_theta_qubits), ens.output_qubit());
  ens.predictions.resize(static_cast<Eigen::Index>(classifier.table_size()));
  for (std::uint64_t c = 0; c < classifier.table_size(); ++c)
    ens.predictions[static_cast<Eigen::Index>(c)] = classifier.value(c) ? 1.0 : -1.0;
  return ens;
}

WeightedEnsembleState accuracy_weighted_state(ModelFamily family, const ParameterCode& pc,
                                              const Dataset& data, const RealVector& x_tilde,
                                              int hidden_width) {
  validate(pc);
  if (x_tilde.size() != data.dim())
    throw std::invalid_argument("input point dimension must match the dataset");
  if (parameter_count(family, data.dim(), hidden_width) != pc.num_params)
    throw std::invalid_argument("grid parameter count does not match the model family");
  const int n = pc.total_bits();
  if (n + 2 > kMaxQubits)
    throw std::invalid_argument("parameter register too wide for the accuracy construction");

  const std::uint64_t codes = pc.code_count();
  std::vector<ModelSpec> specs;
  specs.reserve(codes);
  for (std::uint64_t c = 0; c < codes; ++c)
    specs.push_back(make_model_spec(family, decode_theta(c, pc), data.dim(), hidden_width));
  const std::vector<Real> acc = accuracy_table(specs, data);

  // Registers: parameter codes, then the output qubit (n), then a transient
  // accuracy flag (n+1) holding sqrt(a)|0> + sqrt(1-a)|1> per branch.
  Amplitudes amps = Amplitudes::Zero(Eigen::Index{1} << (n + 2));
  const Real cell = 1.0 / std::sqrt(static_cast<Real>(codes));
  for (std::uint64_t c = 0; c < codes; ++c) {
    amps[static_cast<Eigen::Index>(c << 2)] = cell * std::sqrt(acc[c]);
    amps[static_cast<Eigen::Index>((c << 2) | 1)] = cell * std::sqrt(1.0 - acc[c]);
  }
  StateVector state = from_amplitudes(std::move(amps));
  state = postselect(std::move(state), QubitIndex{n + 1}, 0);
  state = drop_qubit(std::move(state), QubitIndex{n + 1}, 0);

  RealVector weights(static_cast<Eigen::Index>(codes));
  for (std::uint64_t c = 0; c < codes; ++c)
    weights[static_cast<Eigen::Index>(c)] = acc[c];
  WeightedEnsembleState ens{std::move(state), std::move(weights),
                            0.0, n, RealVector()};
  ens.normalizer = ens.weights.sum();
  return apply_A(std::move(ens),
                 build_classifier_oracle(family, pc, x_tilde, hidden_width));
}

EnsembleResult measure_prediction(const WeightedEnsembleState& ens) {
  EnsembleResult result;
  result.p_minus = marginal_probability(ens.state, ens.output_qubit(), 0);
  result.p_plus = marginal_probability(ens.state, ens.output_qubit(), 1);
  result.label = sign_threshold(result.p_plus - result.p_minus);
  const auto codes = static_cast<std::uint64_t>(ens.weights.size());
  result.per_model.reserve(codes);
  for (std::uint64_t c = 0; c < codes; ++c) {
    Real prediction;
    if (ens.predictions.size() > 0) {
      prediction = ens.predictions[static_cast<Eigen::Index>(c)];
    } else {
      const Real p0 = std::norm(ens.state.amplitude(c << 1));
      const Real p1 = std::norm(ens.state.amplitude((c << 1) | 1));
      prediction = p1 > p0 ? 1.0 : -1.0;
    }
    result.per_model.push_back({c, ens.weights[static_cast<Eigen::Index>(c)], prediction});
  }
  return result;
}

std::pair<Real, Real> exact_ensemble_probabilities(const RealVector& weights,
                                                   const RealVector& predictions) {
  if (weights.size() != predictions.size())
    throw std::invalid_argument("weights and predictions must have equal length");
  if (weights.size() < 1) throw std::invalid_argument("ensemble must not be empty");
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("weights must be nonnegative");
  Real total = 0.0, minus = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    const Real p = predictions[i];
    if (p != 1.0 && p != -1.0)
      throw std::invalid_argument("predictions must be +1 or -1");
    total += weights[i];
    if (p < 0.0) minus += weights[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("total weight must be positive");
  const Real p_minus = minus / total;
  return {p_minus, 1.0 - p_minus};
}

RealVector theta_distribution(const WeightedEnsembleState& ens) {
  const auto codes = static_cast<std::uint64_t>(ens.weights.size());
  RealVector dist(static_cast<Eigen::Index>(codes));
  for (std::uint64_t c = 0; c < codes; ++c)
    dist[static_cast<Eigen::Index>(c)] = std::norm(ens.state.amplitude(c << 1)) +
                                         std::norm(ens.state.amplitude((c << 1) | 1));
  return dist;
}

}  // namespace qens
