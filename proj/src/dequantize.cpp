#include "qens/dequantize.hpp"

#include <cmath>
#include <map>

#include "qens/rng.hpp"

namespace qens {

std::string to_string(RejectionMode mode) {
  switch (mode) {
    case RejectionMode::accuracy_weighted: return "accuracy_weighted";
    case RejectionMode::above_half: return "above_half";
  }
  throw std::invalid_argument("unknown rejection mode");
}

RejectionMode rejection_mode_from_string(const std::string& name) {
  if (name == "accuracy_weighted") return RejectionMode::accuracy_weighted;
  if (name == "above_half") return RejectionMode::above_half;
  throw std::invalid_argument("unknown rejection mode '" + name + "'");
}

AcceptedEnsemble rejection_sample(const std::function<Real(std::uint64_t)>& accuracy_of,
                                  std::uint64_t num_models, const RejectionConfig& config,
                                  const ProposalObserver& observer) {
  if (num_models < 1) throw std::invalid_argument("need at least one candidate model");
  if (config.n_proposals < 1) throw std::invalid_argument("need at least one proposal");

  const Rng master(config.seed);
  AcceptedEnsemble out;
  out.n_proposals = config.n_proposals;
  for (std::uint64_t t = 0; t < config.n_proposals; ++t) {
    Rng r = master.substream(t);
    const std::uint64_t id = r.uniform_below(num_models);
    const Real a = accuracy_of(id);
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("accuracy values must lie in [0, 1]");
    bool accept = r.uniform01() < a;
    if (config.mode == RejectionMode::above_half) accept = accept && a > 0.5;
    const Real weight =
        accept ? (config.mode == RejectionMode::above_half ? a : 1.0) : 0.0;
    if (accept) out.members.push_back({id, a, weight});
    if (observer) observer(t, id, a, accept, weight);
  }
  out.acceptance_rate =
      static_cast<Real>(out.members.size()) / static_cast<Real>(config.n_proposals);
  return out;
}

Real acceptance_probability(const RealVector& accuracies) {
  if (accuracies.size() < 1) throw std::invalid_argument("need at least one accuracy");
  if ((accuracies.array() < 0.0).any() || (accuracies.array() > 1.0).any())
    throw std::invalid_argument("accuracy values must lie in [0, 1]");
  return accuracies.mean();
}

AcceptedEnsemble select_above_half(const RealVector& accuracies) {
  if (accuracies.size() < 1) throw std::invalid_argument("need at least one accuracy");
  AcceptedEnsemble out;
  out.n_proposals = static_cast<std::uint64_t>(accuracies.size());
  for (Eigen::Index i = 0; i < accuracies.size(); ++i) {
    const Real a = accuracies[i];
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("accuracy values must lie in [0, 1]");
    if (a > 0.5) out.members.push_back({static_cast<std::uint64_t>(i), a, a});
  }
  out.acceptance_rate =
      static_cast<Real>(out.members.size()) / static_cast<Real>(out.n_proposals);
  return out;
}

EnsembleResult classical_predict(const AcceptedEnsemble& ens,
                                 const std::function<Real(std::uint64_t)>& predictions_of) {
  if (ens.empty()) throw EmptyEnsembleError("no accepted members to vote with");
  // id -> (weight sum, prediction)
  std::map<std::uint64_t, std::pair<Real, Real>> by_id;
  Real total = 0.0, plus = 0.0;
  for (const AcceptedMember& m : ens.members) {
    auto [it, inserted] = by_id.try_emplace(m.theta_id, 0.0, 0.0);
    if (inserted) {
      const Real p = predictions_of(m.theta_id);
      if (p != 1.0 && p != -1.0)
        throw std::invalid_argument("predictions must be +1 or -1");
      it->second.second = p;
    }
    it->second.first += m.weight;
    total += m.weight;
    if (it->second.second > 0.0) plus += m.weight;
  }
  if (!(total > 0.0)) throw EmptyEnsembleError("accepted members carry no weight");
  EnsembleResult result;
  result.p_plus = plus / total;
  result.p_minus = 1.0 - result.p_plus;
  result.label = sign_threshold(result.p_plus - result.p_minus);
  result.per_model.reserve(by_id.size());
  for (const auto& [id, entry] : by_id)
    result.per_model.push_back({id, entry.first, entry.second});
  return result;
}

EnsembleResult classical_predict(const AcceptedEnsemble& ens, ModelFamily family,
                                 const ParameterCode& pc, const RealVector& x_tilde,
                                 int hidden_width) {
  validate(pc);
  const int d = static_cast<int>(x_tilde.size());
  if (parameter_count(family, d, hidden_width) != pc.num_params)
    throw std::invalid_argument("grid parameter count does not match the model family");
  return classical_predict(ens, [&](std::uint64_t id) {
    const ModelSpec spec =
        make_model_spec(family, decode_theta(id, pc), d, hidden_width);
    return predict(spec, x_tilde);
  });
}

EquivalenceReport equivalence_audit(ModelFamily family, const ParameterCode& pc,
                                    const Dataset& data, const RealVector& x_tilde,
                                    std::uint64_t n_proposals, std::uint64_t seed,
                                    int hidden_width) {
  const WeightedEnsembleState ws =
      accuracy_weighted_state(family, pc, data, x_tilde, hidden_width);
  const EnsembleResult quantum = measure_prediction(ws);

  EquivalenceReport report;
  report.n_proposals = n_proposals;
  report.quantum_theta_marginal = theta_distribution(ws);
  report.accuracies = ws.weights;
  report.predictions = ws.predictions;
  report.p_minus_quantum = quantum.p_minus;
  report.mean_accuracy = acceptance_probability(ws.weights);

  const RejectionConfig config{n_proposals, RejectionMode::accuracy_weighted, seed};
  const AcceptedEnsemble ens = rejection_sample(
      [&](std::uint64_t id) { return ws.weights[static_cast<Eigen::Index>(id)]; },
      pc.code_count(), config);
  const EnsembleResult classical = classical_predict(
      ens, [&](std::uint64_t id) { return ws.predictions[static_cast<Eigen::Index>(id)]; });

  report.p_minus_classical = classical.p_minus;
  report.probability_gap = std::abs(report.p_minus_quantum - report.p_minus_classical);
  report.acceptance_rate = ens.acceptance_rate;
  report.accepted_count = static_cast<std::uint64_t>(ens.members.size());

  RealVector freq = RealVector::Zero(static_cast<Eigen::Index>(pc.code_count()));
  for (const AcceptedMember& m : ens.members)
    freq[static_cast<Eigen::Index>(m.theta_id)] += 1.0;
  freq /= static_cast<Real>(ens.members.size());
  report.classical_theta_frequency = freq;
  report.tv_distance = 0.5 * (freq - report.quantum_theta_marginal).lpNorm<1>();
  return report;
}

}  // namespace qens
