// Acceptance gate: ten end-to-end checks over the whole toolkit, each
// printing one [PASS]/[FAIL] summary line with its runtime. A check fails
// through doctest, so ctest reports the gate as a whole while the log
// pinpoints the violated bounds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qens/dequantize.hpp"
#include "qens/deutsch_jozsa.hpp"
#include "qens/experiments.hpp"
#include "qens/models.hpp"
#include "qens/oracle.hpp"
#include "qens/qensemble.hpp"
#include "qens/rng.hpp"
#include "qens/statevector.hpp"
#include "test_util.hpp"

namespace {

using namespace qens;

// Master seed for every randomized check; substreams keep them independent.
constexpr std::uint64_t kGateSeed = 20250822;

__attribute__((format(printf, 1, 2))) std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

// Collects violations for one numbered check and prints its summary line.
class Gate {
 public:
  Gate(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void fail(std::string problem) { problems_.push_back(std::move(problem)); }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void finish(double time_limit_seconds = 0.0) {
    const double secs = elapsed();
    if (time_limit_seconds > 0.0 && secs > time_limit_seconds)
      fail(fmt("runtime %.1f s exceeds the %.0f s budget", secs, time_limit_seconds));
    std::printf("[%s] check %d: %s (%.1f s)\n", problems_.empty() ? "PASS" : "FAIL",
                number_, title_.c_str(), secs);
    for (const std::string& n : notes_) std::printf("    note: %s\n", n.c_str());
    const std::size_t shown = std::min<std::size_t>(problems_.size(), 6);
    for (std::size_t i = 0; i < shown; ++i)
      std::printf("    violation: %s\n", problems_[i].c_str());
    if (problems_.size() > shown)
      std::printf("    ... and %zu more violations\n", problems_.size() - shown);
    std::fflush(stdout);
    std::ostringstream joined;
    for (const std::string& p : problems_) joined << p << "; ";
    CHECK_MESSAGE(problems_.empty(), joined.str());
  }

 private:
  int number_;
  std::string title_;
  std::vector<std::string> problems_;
  std::vector<std::string> notes_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct OracleCase {
  BooleanOracle oracle;
  std::string label;
};

// Every balanced oracle on `arity` inputs, by enumerating the subsets that
// map to one.
std::vector<BooleanOracle> exhaustive_balanced(int arity) {
  const std::size_t cells = std::size_t{1} << arity;
  std::vector<int> pick(cells, 0);
  std::fill(pick.begin() + static_cast<std::ptrdiff_t>(cells / 2), pick.end(), 1);
  std::vector<BooleanOracle> out;
  do {
    std::vector<std::uint64_t> ones;
    for (std::size_t i = 0; i < cells; ++i)
      if (pick[i] == 1) ones.push_back(i);
    out.push_back(make_balanced_oracle(arity, ones));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

// Both constants per width 1..6, every balanced oracle up to width 3, and
// 200 random balanced oracles per width 4..6.
std::vector<OracleCase> promise_suite() {
  std::vector<OracleCase> cases;
  const Rng master(kGateSeed);
  for (int n = 1; n <= 6; ++n) {
    for (int value : {0, 1})
      cases.push_back({make_constant_oracle(n, value), fmt("n=%d constant:%d", n, value)});
    if (n <= 3) {
      int index = 0;
      for (BooleanOracle& oracle : exhaustive_balanced(n))
        cases.push_back({std::move(oracle), fmt("n=%d balanced #%d", n, index++)});
    } else {
      Rng rng = master.substream(1, static_cast<std::uint64_t>(n));
      for (int k = 0; k < 200; ++k)
        cases.push_back({testutil::random_balanced_oracle(n, rng),
                         fmt("n=%d random balanced #%d", n, k)});
    }
  }
  return cases;
}

struct GridInstance {
  ModelFamily family = ModelFamily::perceptron;
  ParameterCode pc{1, 1};
  Dataset data;
  RealVector x;
  Rng rest{0};  // whatever of the instance stream the caller still needs
};

// Random sign-model instance with total grid width capped at max_total_bits.
GridInstance random_instance(const Rng& master, std::uint64_t check, std::uint64_t index,
                             int max_total_bits) {
  const Rng inst = master.substream(check, index);
  Rng pick = inst.substream(0);
  GridInstance out;
  out.family = pick.uniform_below(2) == 0 ? ModelFamily::perceptron : ModelFamily::linear;
  const int max_d = std::min(8, max_total_bits);
  const int d = 1 + static_cast<int>(pick.uniform_below(static_cast<std::uint64_t>(max_d)));
  const int params = parameter_count(out.family, d, 1);
  const int max_bits = std::max(1, max_total_bits / params);
  const int bits = 1 + static_cast<int>(pick.uniform_below(static_cast<std::uint64_t>(max_bits)));
  out.pc = ParameterCode{params, bits};
  const int num_points = 8 + static_cast<int>(pick.uniform_below(57));
  out.data = generate_dataset(num_points, d, inst.substream(1).key());
  Rng query = inst.substream(2);
  out.x = RealVector(d);
  for (int j = 0; j < d; ++j) out.x[j] = query.standard_normal();
  out.x.normalize();
  out.rest = inst.substream(3);
  return out;
}

std::string cli_binary() {
  const char* p = std::getenv("QENS_CLI");
  return p == nullptr ? std::string() : std::string(p);
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_binary() + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("check 1: single-query promise decision is exact") {
  Gate gate(1, "constant/balanced oracles decided exactly in one query");
  const std::vector<OracleCase> cases = promise_suite();
  for (const OracleCase& c : cases) {
    const DJOutcome out = run_deutsch_jozsa(c.oracle);
    const bool constant = c.oracle.kind() == OracleKind::constant;
    const Real target = constant ? 1.0 : 0.0;
    if (std::abs(out.p_all_zeros - target) > 1e-12)
      gate.fail(fmt("%s: p_all_zeros %.3e (want %.0f)", c.label.c_str(), out.p_all_zeros,
                    target));
    if (out.verdict != c.oracle.kind())
      gate.fail(fmt("%s: verdict disagrees with the oracle's construction", c.label.c_str()));
  }
  gate.note(fmt("%zu oracles: both constants for widths 1..6, all balanced up to width 3, "
                "200 random balanced per width 4..6",
                cases.size()));
  gate.finish(10.0);
}

TEST_CASE("check 2: recast circuit is congruent with the reference run") {
  Gate gate(2, "ensemble-form circuit reproduces the reference decision");
  const std::vector<OracleCase> cases = promise_suite();
  Real worst = 0.0;
  for (const OracleCase& c : cases) {
    if (!congruence_check(c.oracle))
      gate.fail(fmt("%s: frame-change congruence fails", c.label.c_str()));
    const Real p_zero = run_qensemble_dj(c.oracle);
    const Real diff = std::abs(p_zero - c.oracle.zero_fraction());
    worst = std::max(worst, diff);
    if (diff > 1e-12)
      gate.fail(fmt("%s: p(f=0) off by %.3e from the truth-table fraction", c.label.c_str(),
                    diff));
  }
  gate.note(fmt("%zu oracles; worst p(f=0) deviation %.2e", cases.size(), worst));
  gate.finish();
}

TEST_CASE("check 3: simulated ensemble matches direct arithmetic") {
  Gate gate(3, "statevector vote equals the closed-form weight sums");
  const Rng master(kGateSeed);
  Real worst = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const GridInstance inst = random_instance(master, 3, i, 12);
    const int d = static_cast<int>(inst.data.dim());
    const WeightedEnsembleState ens =
        accuracy_weighted_state(inst.family, inst.pc, inst.data, inst.x, 1);
    const EnsembleResult sim = measure_prediction(ens);
    const auto codes = static_cast<Eigen::Index>(inst.pc.code_count());
    RealVector weights(codes), predictions(codes);
    for (Eigen::Index code = 0; code < codes; ++code) {
      const ModelSpec model = make_model_spec(
          inst.family, decode_theta(static_cast<std::uint64_t>(code), inst.pc), d, 1);
      weights[code] = accuracy(model, inst.data);
      predictions[code] = predict(model, inst.x);
    }
    const auto [p_minus, p_plus] = exact_ensemble_probabilities(weights, predictions);
    const Real diff = std::abs(sim.p_minus - p_minus);
    worst = std::max(worst, diff);
    if (!(diff < 1e-10))
      gate.fail(fmt("instance %llu: |p_minus gap| = %.3e",
                    static_cast<unsigned long long>(i), diff));
  }
  gate.note(fmt("50 random sign-model instances, up to 12 grid bits and 8 features; "
                "worst probability gap %.2e",
                worst));
  gate.finish(60.0);
}

TEST_CASE("check 4: sampling the weights classically reproduces the vote") {
  Gate gate(4, "rejection sampling agrees with the simulated distribution");
  const Rng master(kGateSeed);
  constexpr std::uint64_t kProposals = 1000000;
  int rate_within = 0;
  Real worst_tv = 0.0, worst_gap = 0.0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    // Narrower grids than check 3: the frequency estimate over 2^total_bits
    // cells needs headroom under the 0.01 distance bound at this sample size.
    const GridInstance inst = random_instance(master, 4, i, 7);
    const EquivalenceReport rep = equivalence_audit(
        inst.family, inst.pc, inst.data, inst.x, kProposals, inst.rest.key(), 1);
    worst_tv = std::max(worst_tv, rep.tv_distance);
    worst_gap = std::max(worst_gap, rep.probability_gap);
    if (!(rep.tv_distance < 0.01))
      gate.fail(fmt("instance %llu: total-variation distance %.4f >= 0.01",
                    static_cast<unsigned long long>(i), rep.tv_distance));
    if (!(rep.probability_gap < 0.01))
      gate.fail(fmt("instance %llu: class-probability gap %.4f >= 0.01",
                    static_cast<unsigned long long>(i), rep.probability_gap));
    const Real se =
        std::sqrt(rep.mean_accuracy * (1.0 - rep.mean_accuracy) / static_cast<Real>(kProposals));
    if (std::abs(rep.acceptance_rate - rep.mean_accuracy) <= 3.0 * se) ++rate_within;
  }
  if (rate_within < 18)
    gate.fail(fmt("acceptance rate within 3 standard errors of the mean weight in only "
                  "%d of 20 instances",
                  rate_within));
  gate.note(fmt("20 instances at %llu proposals; worst distance %.4f, worst gap %.4f, "
                "rate within 3 SE in %d/20",
                static_cast<unsigned long long>(kProposals), worst_tv, worst_gap, rate_within));
  gate.finish();
}

TEST_CASE("check 5: accuracies concentrate at one half as width grows") {
  Gate gate(5, "per-family accuracy concentration over dimension");
  const Rng master(kGateSeed);
  struct Plan {
    ModelFamily family;
    int num_points;
  };
  const std::vector<Plan> plans = {{ModelFamily::linear, 10000},
                                   {ModelFamily::perceptron, 10000},
                                   {ModelFamily::mlp3, 2000}};
  const std::vector<int> dims = {10, 100, 1000};
  for (std::size_t p = 0; p < plans.size(); ++p) {
    const Plan& plan = plans[p];
    const std::vector<ConcentrationRecord> records = concentration_study(
        plan.family, dims, plan.num_points, 100, master.substream(5, p).key(), 32, 1);
    const std::string family = to_string(plan.family);
    for (const ConcentrationRecord& r : records) {
      if (!(r.std_accuracy > 0.0)) {
        gate.fail(fmt("%s d=%d: zero accuracy spread", family.c_str(), r.d));
        continue;
      }
      const Real bound = 5.0 * r.std_accuracy / std::sqrt(100.0);
      if (!(std::abs(r.mean_accuracy - 0.5) < bound))
        gate.fail(fmt("%s d=%d: mean %.5f outside 0.5 +- %.5f", family.c_str(), r.d,
                      r.mean_accuracy, bound));
    }
    if (!(records.back().std_accuracy < records.front().std_accuracy))
      gate.fail(fmt("%s: spread did not shrink from d=10 (%.5f) to d=1000 (%.5f)",
                    family.c_str(), records.front().std_accuracy,
                    records.back().std_accuracy));
    gate.note(fmt("%s: std %.4f at d=10 -> %.4f at d=1000", family.c_str(),
                  records.front().std_accuracy, records.back().std_accuracy));
  }
  gate.finish(600.0);
}

TEST_CASE("check 6: spread decays polynomially, not exponentially") {
  Gate gate(6, "log-log decay of the accuracy spread over dimension");
  const Rng master(kGateSeed);
  const std::vector<ConcentrationRecord> records =
      concentration_study(ModelFamily::perceptron, {10, 30, 100, 300, 1000, 2000}, 10000, 100,
                          master.substream(6).key(), 32, 1);
  const Real slope = fit_decay_slope(records);
  const Real scale = fit_berry_esseen_scale(records);
  if (!(slope >= -1.5 && slope <= -0.25))
    gate.fail(fmt("decay slope %.3f outside [-1.5, -0.25]", slope));
  gate.note(fmt("decay slope %.3f (reference rate -0.5), pinned reference scale %.3f", slope,
                scale));
  const char* full = std::getenv("QENS_FULL_SCALE");
  if (full != nullptr && std::string(full) == "1") {
    const HighDResult r = highd_experiment(8000, 10000, 30000, 2000, 0, 1);
    if (!(std::abs(r.test_accuracy - 0.502) <= 0.01))
      gate.fail(fmt("full-scale held-out accuracy %.5f outside 0.502 +- 0.01",
                    r.test_accuracy));
    if (!(std::abs(static_cast<Real>(r.accepted_count) - 15000.0) <= 600.0))
      gate.fail(fmt("full-scale accepted count %llu outside 15000 +- 600",
                    static_cast<unsigned long long>(r.accepted_count)));
    gate.note(fmt("full-scale run: accepted %llu of 30000, held-out accuracy %.5f",
                  static_cast<unsigned long long>(r.accepted_count), r.test_accuracy));
  } else {
    gate.note("full-scale reference (d=8000, M=10000, n=30000, 2000 held out): expected "
              "accepted 15000 +- 600 and accuracy 0.502 +- 0.01; set QENS_FULL_SCALE=1 to "
              "run it here (~10 min)");
  }
  gate.finish();
}

TEST_CASE("check 7: selected high-dimensional ensemble stays near chance") {
  Gate gate(7, "desk-scale high-dimension run lands near random guessing");
  const HighDResult r = highd_experiment(1000, 2000, 2000, 500, 0, 1);
  if (!(r.test_accuracy >= 0.45 && r.test_accuracy <= 0.55))
    gate.fail(fmt("held-out accuracy %.5f outside [0.45, 0.55]", r.test_accuracy));
  if (!(r.accepted_fraction >= 0.4 && r.accepted_fraction <= 0.6))
    gate.fail(fmt("accepted fraction %.4f outside [0.4, 0.6]", r.accepted_fraction));
  gate.note(fmt("d=1000, M=2000, n=2000: accepted %llu (fraction %.3f), held-out accuracy "
                "%.5f",
                static_cast<unsigned long long>(r.accepted_count), r.accepted_fraction,
                r.test_accuracy));
  gate.finish(300.0);
}

TEST_CASE("check 8: sampled accuracy moments match the analytic limits") {
  Gate gate(8, "accuracy mean pinned at one half, variance falling in d");
  const Rng master(kGateSeed);
  for (const bool resample : {false, true}) {
    const std::vector<AccuracyMomentsRecord> records =
        accuracy_moments_study({10, 100, 1000, 5000}, 2000, 200,
                               master.substream(8, resample ? 1 : 0).key(), resample, 1);
    const char* mode = resample ? "resampled ground truth" : "fixed ground truth";
    for (const AccuracyMomentsRecord& r : records) {
      const Real bound = 3.0 * std::sqrt(r.var_accuracy / 200.0);
      if (!(std::abs(r.mean_accuracy - 0.5) < bound))
        gate.fail(fmt("%s d=%d: mean %.5f outside 0.5 +- %.5f", mode, r.d, r.mean_accuracy,
                      bound));
    }
    for (std::size_t i = 0; i + 1 < 3; ++i)
      if (!(records[i].var_accuracy > records[i + 1].var_accuracy))
        gate.fail(fmt("%s: variance not strictly decreasing from d=%d to d=%d", mode,
                      records[i].d, records[i + 1].d));
    gate.note(fmt("%s: variance %.2e (d=10) -> %.2e (d=1000)", mode, records[0].var_accuracy,
                  records[2].var_accuracy));
  }
  gate.finish();
}

TEST_CASE("check 9: simulator property suite") {
  Gate gate(9, "randomized simulator invariants hold at stated tolerances");
  const Rng master(kGateSeed);
  constexpr int kCases = 1000;

  {  // Norm preservation under random circuits.
    Rng rng = master.substream(9, 1);
    Real worst = 0.0;
    for (int k = 0; k < kCases; ++k) {
      const int n = 1 + static_cast<int>(rng.uniform_below(5));
      StateVector state = testutil::random_state(n, rng);
      for (int g = 0; g < 8; ++g)
        state = apply_gate(std::move(state), testutil::random_gate(rng),
                           QubitIndex{static_cast<int>(rng.uniform_below(n))});
      worst = std::max(worst, state.norm_error());
    }
    if (!(worst <= kNormTol))
      gate.fail(fmt("norm drift %.3e after random circuits exceeds %.0e", worst, kNormTol));
    gate.note(fmt("norm drift after 8-gate circuits: worst %.2e", worst));
  }

  {  // Gate unitarity.
    Rng rng = master.substream(9, 2);
    Real worst = 0.0;
    for (int k = 0; k < kCases; ++k)
      worst = std::max(worst, testutil::random_gate(rng).unitarity_error());
    if (!(worst <= kAlgebraTol))
      gate.fail(fmt("gate unitarity error %.3e exceeds %.0e", worst, kAlgebraTol));
    gate.note(fmt("gate unitarity: worst %.2e", worst));
  }

  {  // Boolean oracles are involutions.
    Rng rng = master.substream(9, 3);
    Real worst = 0.0;
    for (int k = 0; k < kCases; ++k) {
      const int arity = 1 + static_cast<int>(rng.uniform_below(3));
      const int n = arity + 1 + static_cast<int>(rng.uniform_below(2));
      const BooleanOracle oracle = testutil::random_general_oracle(arity, rng);
      std::vector<QubitIndex> inputs;
      for (int j = 0; j < arity; ++j) inputs.push_back(QubitIndex{j});
      const QubitIndex target{n - 1};
      const StateVector original = testutil::random_state(n, rng);
      const StateVector twice = apply_boolean_oracle(
          apply_boolean_oracle(original, oracle, inputs, target), oracle, inputs, target);
      worst = std::max(worst,
                       testutil::max_abs_diff(original.amplitudes(), twice.amplitudes()));
    }
    if (!(worst <= kAlgebraTol))
      gate.fail(fmt("double oracle application drifts by %.3e", worst));
    gate.note(fmt("oracle involution: worst %.2e", worst));
  }

  {  // Postselection renormalizes the kept branch.
    Rng rng = master.substream(9, 4);
    Real worst_norm = 0.0, worst_marginal = 0.0;
    for (int k = 0; k < kCases; ++k) {
      const int n = 1 + static_cast<int>(rng.uniform_below(4));
      const QubitIndex qubit{static_cast<int>(rng.uniform_below(n))};
      const int outcome = static_cast<int>(rng.uniform_below(2));
      StateVector state = testutil::random_state(n, rng);
      // Keep the branch fat enough that renormalization is well conditioned.
      int guard = 0;
      while (marginal_probability(state, qubit, outcome) < 0.05 && ++guard < 100)
        state = testutil::random_state(n, rng);
      const StateVector post = postselect(std::move(state), qubit, outcome);
      worst_norm = std::max(worst_norm, post.norm_error());
      worst_marginal =
          std::max(worst_marginal, std::abs(marginal_probability(post, qubit, outcome) - 1.0));
    }
    if (!(worst_norm <= kNormTol))
      gate.fail(fmt("postselected state norm error %.3e exceeds %.0e", worst_norm, kNormTol));
    if (!(worst_marginal <= kAlgebraTol))
      gate.fail(fmt("postselected branch weight off from 1 by %.3e", worst_marginal));
    gate.note(fmt("postselection: worst norm error %.2e, worst branch weight gap %.2e",
                  worst_norm, worst_marginal));
  }

  {  // Amplitude encoding lays weights out on the expected slots.
    Rng rng = master.substream(9, 5);
    Real worst = 0.0;
    for (int k = 0; k < kCases; ++k) {
      const int code_qubits = 1 + static_cast<int>(rng.uniform_below(4));
      const auto codes = Eigen::Index{1} << code_qubits;
      const int extra = static_cast<int>(rng.uniform_below(3));
      RealVector weights(codes);
      for (Eigen::Index j = 0; j < codes; ++j) weights[j] = rng.uniform01() + 1e-3;
      const StateVector state = amplitude_encode(weights, extra);
      const Real total = weights.sum();
      const int encoded_qubits = state.num_qubits() - extra;
      const std::uint64_t slots = std::uint64_t{1} << encoded_qubits;
      for (std::uint64_t c = 0; c < slots; ++c) {
        const Real want = c < static_cast<std::uint64_t>(codes) ? weights[c] / total : 0.0;
        const Real got = std::norm(state.amplitude(c << extra));
        worst = std::max(worst, std::abs(got - want));
      }
      const std::uint64_t low_mask = (std::uint64_t{1} << extra) - 1;
      for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(state.dim()); ++idx)
        if ((idx & low_mask) != 0)
          worst = std::max(worst, std::abs(state.amplitude(idx)));
    }
    if (!(worst <= kAlgebraTol))
      gate.fail(fmt("encoded weight readout off by %.3e", worst));
    gate.note(fmt("amplitude encoding: worst slot error %.2e", worst));
  }

  gate.finish(30.0);
}

TEST_CASE("check 10: command-line runs are deterministic") {
  Gate gate(10, "every subcommand rerun with its seed is byte-identical");
  if (cli_binary().empty()) {
    gate.fail("QENS_CLI is not set; cannot locate the tool under test");
    gate.finish();
    return;
  }
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"dj", "dj --n 3 --oracle balanced:mask=5"},
      {"qensemble", "qensemble --family perceptron --bits 2 --d 2 --M 32 --seed 9"},
      {"dequantize",
       "dequantize --family linear --bits 1 --d 3 --M 24 --proposals 2000 --seed 9"},
      {"concentration", "concentration --d 5,20 --M 300 --n 64 --seed 9"},
      {"highd", "highd --d 40 --M 150 --n 130 --M-test 60 --seed 9"},
      {"appendix-b", "appendix-b --d 5,20 --M 200 --trials 50 --seed 9"},
      {"compare", "compare --family perceptron --bits 3 --d 2 --M 32 --proposals 20000 "
                  "--seed 9"},
  };
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  for (const auto& [name, args] : runs) {
    const std::filesystem::path a = dir / ("qens_accept_" + name + "_a.csv");
    const std::filesystem::path b = dir / ("qens_accept_" + name + "_b.csv");
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    const int rc_a = run_cli(args + " --output " + a.string());
    const int rc_b = run_cli(args + " --output " + b.string());
    if (rc_a != 0 || rc_b != 0) {
      gate.fail(fmt("%s: exit codes %d/%d", name.c_str(), rc_a, rc_b));
      continue;
    }
    const std::string first = slurp(a);
    const std::string second = slurp(b);
    if (first.empty())
      gate.fail(fmt("%s: wrote an empty file", name.c_str()));
    else if (first != second)
      gate.fail(fmt("%s: reruns differ byte for byte", name.c_str()));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
  gate.note("7 subcommands, two seeded runs each, compared byte for byte");
  gate.finish();
}
