#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "qens/qensemble.hpp"

namespace qens {

// No proposal survived; the classical ensemble has nothing to vote with.
struct EmptyEnsembleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RejectionMode { accuracy_weighted, above_half };

std::string to_string(RejectionMode mode);
RejectionMode rejection_mode_from_string(const std::string& name);

struct RejectionConfig {
  std::uint64_t n_proposals = 0;
  RejectionMode mode = RejectionMode::accuracy_weighted;
  std::uint64_t seed = 0;
};

struct AcceptedMember {
  std::uint64_t theta_id = 0;
  Real a_theta = 0.0;
  Real weight = 0.0;
};

struct AcceptedEnsemble {
  std::vector<AcceptedMember> members;  // one entry per accepted proposal
  std::uint64_t n_proposals = 0;
  Real acceptance_rate = 0.0;
  bool empty() const { return members.empty(); }
};

// Per-proposal trace: (proposal index, theta_id, a_theta, accepted, weight),
// invoked in proposal order. Weight is 0 for rejected proposals.
using ProposalObserver =
    std::function<void(std::uint64_t, std::uint64_t, Real, bool, Real)>;

// Monte Carlo realization of accuracy weighting with no state vector in
// sight. Each proposal draws theta_id uniformly and keeps it iff u < a_theta
// for a fresh uniform u (mode accuracy_weighted; kept members carry weight 1
// and the acceptance frequency realizes the weighting). Mode above_half
// additionally requires a_theta > 1/2 and kept members carry weight a_theta.
// Each proposal consumes its own RNG substream (seed, proposal index), so
// the outcome does not depend on evaluation order.
AcceptedEnsemble rejection_sample(const std::function<Real(std::uint64_t)>& accuracy_of,
                                  std::uint64_t num_models, const RejectionConfig& config,
                                  const ProposalObserver& observer = {});

// Expected acceptance rate of mode accuracy_weighted: the mean accuracy.
Real acceptance_probability(const RealVector& accuracies);

// Deterministic counterpart of the above-half rule: keeps every model with
// a_theta > 1/2 exactly once, weighted by a_theta.
AcceptedEnsemble select_above_half(const RealVector& accuracies);

// Weighted vote over the accepted members; predictions_of maps a theta_id
// to +-1. per_model aggregates the members by id. Throws EmptyEnsembleError
// when nothing was accepted.
EnsembleResult classical_predict(const AcceptedEnsemble& ens,
                                 const std::function<Real(std::uint64_t)>& predictions_of);

// Same, with theta_id interpreted as a grid code of the given family.
EnsembleResult classical_predict(const AcceptedEnsemble& ens, ModelFamily family,
                                 const ParameterCode& pc, const RealVector& x_tilde,
                                 int hidden_width = kDefaultHiddenWidth);

struct EquivalenceReport {
  Real p_minus_quantum = 0.0;
  Real p_minus_classical = 0.0;
  Real probability_gap = 0.0;  // |quantum - classical|
  Real tv_distance = 0.0;      // accepted-code frequencies vs the state marginal
  Real acceptance_rate = 0.0;
  Real mean_accuracy = 0.0;
  std::uint64_t accepted_count = 0;
  std::uint64_t n_proposals = 0;
  RealVector quantum_theta_marginal;
  RealVector classical_theta_frequency;
  RealVector accuracies;   // per grid code
  RealVector predictions;  // per grid code
};

// Runs the simulated pipeline and the rejection sampler on one instance and
// reports how far apart they land.
EquivalenceReport equivalence_audit(ModelFamily family, const ParameterCode& pc,
                                    const Dataset& data, const RealVector& x_tilde,
                                    std::uint64_t n_proposals, std::uint64_t seed,
                                    int hidden_width = kDefaultHiddenWidth);

}  // namespace qens
