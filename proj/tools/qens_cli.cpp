// qens: quantum-ensemble classifier toolkit.
//
// One subcommand per procedure: dj, qensemble, dequantize, concentration,
// highd, appendix-b, compare. Exit codes: 0 success, 1 bad arguments,
// 2 runtime failure (zero-probability postselection, empty ensemble, ...).
#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qens/csv.hpp"
#include "qens/dequantize.hpp"
#include "qens/deutsch_jozsa.hpp"
#include "qens/experiments.hpp"
#include "qens/qensemble.hpp"

namespace {

using namespace qens;

// CLI-side RNG substreams under the user seed. Train data mirrors the
// experiments layout (stream 1, run 0); the query point gets its own branch.
constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kQueryStream = 4;

struct QuantumOptions {
  std::string family = "perceptron";
  int bits = 1;
  int d = 2;
  int num_points = 32;
  int hidden = 1;
  std::vector<Real> x;
  std::uint64_t seed = 0;
};

void add_seed_option(CLI::App* sub, std::uint64_t& seed) {
  sub->add_option("--seed", seed, "RNG seed (env QENS_SEED)")
      ->envname("QENS_SEED")
      ->capture_default_str();
}

void add_quantum_options(CLI::App* sub, QuantumOptions& o) {
  sub->add_option("--family", o.family, "model family: linear, perceptron, mlp3")
      ->capture_default_str();
  sub->add_option("--bits", o.bits, "bits per model parameter")->capture_default_str();
  sub->add_option("--d", o.d, "input dimension")->capture_default_str();
  sub->add_option("--M", o.num_points, "training-set size")->capture_default_str();
  sub->add_option("--hidden", o.hidden, "hidden width (mlp3 only)")->capture_default_str();
  sub->add_option("--x", o.x, "query point, comma-separated (default: drawn from the seed)")
      ->delimiter(',');
  add_seed_option(sub, o.seed);
}

struct GridInstance {
  ModelFamily family = ModelFamily::perceptron;
  Dataset data;
  RealVector x;
  ParameterCode pc;
  int hidden = 1;
};

GridInstance build_instance(const QuantumOptions& o) {
  GridInstance inst;
  inst.family = family_from_string(o.family);
  inst.hidden = o.hidden;
  if (o.d < 1) throw std::invalid_argument("dimension must be positive");
  if (o.num_points < 1) throw std::invalid_argument("need at least one training point");
  const Rng master(o.seed);
  inst.data = generate_dataset(o.num_points, o.d, master.substream(kTrainStream, 0).key());
  if (!o.x.empty()) {
    if (static_cast<int>(o.x.size()) != o.d)
      throw std::invalid_argument("--x must list exactly d coordinates");
    inst.x = Eigen::Map<const RealVector>(o.x.data(), static_cast<Eigen::Index>(o.x.size()));
  } else {
    Rng query = master.substream(kQueryStream);
    inst.x.resize(o.d);
    for (int j = 0; j < o.d; ++j) inst.x[j] = query.standard_normal();
    inst.x /= inst.x.norm();
  }
  inst.pc = ParameterCode{parameter_count(inst.family, o.d, o.hidden), o.bits};
  validate(inst.pc);
  return inst;
}

std::string join_reals(const RealVector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += format_real(v[i]);
  }
  return out;
}

// Summary lines go to standard output and, prefixed with "# ", to the tail
// of the CSV so the file alone reproduces the run's verdict.
void emit_summary(std::optional<CsvWriter>& writer,
                  const std::vector<std::pair<std::string, std::string>>& fields) {
  for (const auto& [key, value] : fields) {
    std::cout << key << "=" << value << "\n";
    if (writer) writer->write_line("# " + key + "=" + value);
  }
}

int run_dj(int n, const std::string& oracle_spec, const std::string& output) {
  const BooleanOracle oracle = parse_oracle(n, oracle_spec);
  const Real p_f0 = run_qensemble_dj(oracle);

  std::optional<CsvWriter> writer;
  if (!output.empty()) writer.emplace(output);
  if (writer) writer->write_line("n,oracle,kind,p_all_zeros,p_f0,verdict");

  std::string p_zeros_text, verdict_text;
  if (oracle.kind() != OracleKind::general) {
    const DJOutcome outcome = run_deutsch_jozsa(oracle);
    p_zeros_text = format_real(outcome.p_all_zeros);
    verdict_text = to_string(outcome.verdict);
  }
  if (writer) {
    std::string spec_field = oracle_spec;  // the subset form carries commas
    std::replace(spec_field.begin(), spec_field.end(), ',', ';');
    writer->write_line(std::to_string(n) + "," + spec_field + "," +
                       to_string(oracle.kind()) + "," + p_zeros_text + "," +
                       format_real(p_f0) + "," + verdict_text);
  }

  std::vector<std::pair<std::string, std::string>> fields;
  if (!p_zeros_text.empty()) fields.emplace_back("p_all_zeros", p_zeros_text);
  fields.emplace_back("p_f0", format_real(p_f0));
  if (!verdict_text.empty()) fields.emplace_back("verdict", verdict_text);
  emit_summary(writer, fields);
  if (writer) writer->commit();
  return 0;
}

int run_qensemble(const QuantumOptions& o, const std::string& output) {
  const GridInstance inst = build_instance(o);
  const WeightedEnsembleState ws =
      accuracy_weighted_state(inst.family, inst.pc, inst.data, inst.x, inst.hidden);
  const EnsembleResult result = measure_prediction(ws);

  std::optional<CsvWriter> writer;
  if (!output.empty()) writer.emplace(output);
  if (writer) {
    writer->write_line("theta_code,a_theta,prediction,weight_share");
    for (const auto& row : result.per_model)
      writer->write_line(std::to_string(row.code) + "," + format_real(row.weight) + "," +
                         format_real(row.prediction) + "," +
                         format_real(row.weight / ws.normalizer));
  }
  emit_summary(writer, {{"x", join_reals(inst.x)},
                        {"normalizer", format_real(ws.normalizer)},
                        {"p_minus", format_real(result.p_minus)},
                        {"p_plus", format_real(result.p_plus)},
                        {"label", format_real(result.label)}});
  if (writer) writer->commit();
  return 0;
}

int run_dequantize(const QuantumOptions& o, const std::string& mode_name,
                   std::uint64_t proposals, int threads, const std::string& output) {
  const GridInstance inst = build_instance(o);
  const RejectionMode mode = rejection_mode_from_string(mode_name);

  const std::uint64_t codes = inst.pc.code_count();
  std::vector<ModelSpec> specs;
  specs.reserve(codes);
  for (std::uint64_t c = 0; c < codes; ++c)
    specs.push_back(make_model_spec(inst.family, decode_theta(c, inst.pc),
                                    inst.data.dim(), inst.hidden));
  const std::vector<Real> acc = accuracy_table(specs, inst.data, threads);
  RealVector predictions(static_cast<Eigen::Index>(codes));
  for (std::uint64_t c = 0; c < codes; ++c)
    predictions[static_cast<Eigen::Index>(c)] = predict(specs[c], inst.x);

  std::optional<CsvWriter> writer;
  if (!output.empty()) writer.emplace(output);
  if (writer) writer->write_line("theta_id,a_theta,accepted,weight");
  const ProposalObserver observer =
      [&](std::uint64_t, std::uint64_t id, Real a, bool accepted, Real weight) {
        if (writer)
          writer->write_line(std::to_string(id) + "," + format_real(a) + "," +
                             (accepted ? "1" : "0") + "," + format_real(weight));
      };
  const AcceptedEnsemble ens = rejection_sample(
      [&](std::uint64_t id) { return acc[id]; }, codes,
      RejectionConfig{proposals, mode, o.seed}, observer);
  const EnsembleResult result =
      classical_predict(ens, [&](std::uint64_t id) {
        return predictions[static_cast<Eigen::Index>(id)];
      });

  emit_summary(writer,
               {{"x", join_reals(inst.x)},
                {"accepted_count", std::to_string(ens.members.size())},
                {"acceptance_rate", format_real(ens.acceptance_rate)},
                {"p_minus", format_real(result.p_minus)},
                {"p_plus", format_real(result.p_plus)},
                {"label", format_real(result.label)}});
  if (writer) writer->commit();
  return 0;
}

int run_compare(const QuantumOptions& o, std::uint64_t proposals, const std::string& output) {
  const GridInstance inst = build_instance(o);
  const EquivalenceReport report = equivalence_audit(inst.family, inst.pc, inst.data,
                                                     inst.x, proposals, o.seed, inst.hidden);

  std::optional<CsvWriter> writer;
  if (!output.empty()) writer.emplace(output);
  if (writer) {
    writer->write_line(
        "p_minus_quantum,p_minus_classical,probability_gap,tv_distance,"
        "acceptance_rate,mean_accuracy,accepted_count,n_proposals");
    writer->write_line(format_real(report.p_minus_quantum) + "," +
                       format_real(report.p_minus_classical) + "," +
                       format_real(report.probability_gap) + "," +
                       format_real(report.tv_distance) + "," +
                       format_real(report.acceptance_rate) + "," +
                       format_real(report.mean_accuracy) + "," +
                       std::to_string(report.accepted_count) + "," +
                       std::to_string(report.n_proposals));
  }
  emit_summary(writer, {{"x", join_reals(inst.x)},
                        {"p_minus_quantum", format_real(report.p_minus_quantum)},
                        {"p_minus_classical", format_real(report.p_minus_classical)},
                        {"probability_gap", format_real(report.probability_gap)},
                        {"tv_distance", format_real(report.tv_distance)},
                        {"acceptance_rate", format_real(report.acceptance_rate)}});
  if (writer) writer->commit();
  return 0;
}

int run_concentration(const std::string& family_name, const std::vector<int>& d_list,
                      int num_points, int num_models, int hidden, std::uint64_t seed,
                      int threads, const std::string& output) {
  const ModelFamily family = family_from_string(family_name);
  const auto records =
      concentration_study(family, d_list, num_points, num_models, seed, hidden, threads);

  std::vector<std::string> comments;
  for (const auto& r : records)
    std::cout << "d=" << r.d << " mean_accuracy=" << format_real(r.mean_accuracy)
              << " std_accuracy=" << format_real(r.std_accuracy) << "\n";
  bool has_fit = false;
  Real slope = 0.0, scale = 0.0;
  try {
    slope = fit_decay_slope(records);
    scale = fit_berry_esseen_scale(records);
    has_fit = true;
  } catch (const std::invalid_argument&) {
    // A fit needs two or more positive-spread records; fine without one.
  }
  if (has_fit) {
    std::cout << "decay_slope=" << format_real(slope) << "\n";
    std::cout << "reference_scale=" << format_real(scale) << "\n";
    comments.push_back("decay_slope=" + format_real(slope));
    comments.push_back("reference_scale=" + format_real(scale));
  }
  if (!output.empty()) export_csv(records, output, comments);
  return 0;
}

int run_highd(int d, int num_points, int num_models, int num_test, std::uint64_t seed,
              int threads, const std::string& output) {
  const HighDResult result =
      highd_experiment(d, num_points, num_models, num_test, seed, threads);
  std::cout << "accepted_count=" << result.accepted_count << "\n"
            << "accepted_fraction=" << format_real(result.accepted_fraction) << "\n"
            << "test_accuracy=" << format_real(result.test_accuracy) << "\n";
  if (!output.empty())
    export_csv(result, output,
               {"test_accuracy=" + format_real(result.test_accuracy)});
  return 0;
}

int run_appendix_b(const std::vector<int>& d_list, int num_points, int trials,
                   bool resample, std::uint64_t seed, int threads,
                   const std::string& output) {
  const auto records =
      accuracy_moments_study(d_list, num_points, trials, seed, resample, threads);
  for (const auto& r : records)
    std::cout << "d=" << r.d << " mean_accuracy=" << format_real(r.mean_accuracy)
              << " var_accuracy=" << format_real(r.var_accuracy) << "\n";
  if (!output.empty()) export_csv(records, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum ensembles of quantum classifiers: simulation toolkit"};
  app.require_subcommand(1);

  // dj
  int dj_n = 3;
  std::string dj_oracle = "constant:0";
  std::string dj_output;
  auto* dj = app.add_subcommand("dj", "single-query constant-vs-balanced decision");
  dj->add_option("--n", dj_n, "input register width in qubits")->capture_default_str();
  dj->add_option("--oracle", dj_oracle,
                 "constant:{0|1} | balanced:mask=<int> | balanced:subset=<i,j,...>")
      ->capture_default_str();
  dj->add_option("--output", dj_output, "CSV destination");

  // qensemble
  QuantumOptions qe;
  std::string qe_output;
  auto* qensemble =
      app.add_subcommand("qensemble", "accuracy-weighted ensemble vote, simulated exactly");
  add_quantum_options(qensemble, qe);
  qensemble->add_option("--output", qe_output, "CSV destination");

  // dequantize
  QuantumOptions dq;
  std::string dq_mode = "accuracy_weighted";
  std::uint64_t dq_proposals = 10000;
  int dq_threads = 1;
  std::string dq_output;
  auto* dequantize =
      app.add_subcommand("dequantize", "classical rejection sampling of the same vote");
  add_quantum_options(dequantize, dq);
  dequantize->add_option("--mode", dq_mode, "accuracy_weighted | above_half")
      ->capture_default_str();
  dequantize->add_option("--proposals", dq_proposals, "number of proposals")
      ->capture_default_str();
  dequantize->add_option("--threads", dq_threads, "worker cap (1 = serial)")
      ->capture_default_str();
  dequantize->add_option("--output", dq_output, "CSV destination");

  // concentration
  std::string conc_family = "perceptron";
  std::vector<int> conc_d{10, 100, 1000};
  int conc_points = 10000, conc_models = 100, conc_hidden = kDefaultHiddenWidth,
      conc_threads = 1;
  std::uint64_t conc_seed = 0;
  std::string conc_output;
  auto* concentration =
      app.add_subcommand("concentration", "accuracy moments of random models vs dimension");
  concentration->add_option("--family", conc_family, "model family")->capture_default_str();
  concentration->add_option("--d", conc_d, "dimensions, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  concentration->add_option("--M", conc_points, "dataset size")->capture_default_str();
  concentration->add_option("--n", conc_models, "sampled models per dimension")
      ->capture_default_str();
  concentration->add_option("--hidden", conc_hidden, "hidden width (mlp3 only)")
      ->capture_default_str();
  add_seed_option(concentration, conc_seed);
  concentration->add_option("--threads", conc_threads, "worker cap (1 = serial)")
      ->capture_default_str();
  concentration->add_option("--output", conc_output, "CSV destination");

  // highd
  int hd_d = 1000, hd_points = 2000, hd_models = 2000, hd_test = 500, hd_threads = 1;
  std::uint64_t hd_seed = 0;
  std::string hd_output;
  auto* highd =
      app.add_subcommand("highd", "above-half ensemble scored on held-out points");
  highd->add_option("--d", hd_d, "input dimension")->capture_default_str();
  highd->add_option("--M", hd_points, "training points")->capture_default_str();
  highd->add_option("--n", hd_models, "sampled models")->capture_default_str();
  highd->add_option("--M-test", hd_test, "held-out points")->capture_default_str();
  add_seed_option(highd, hd_seed);
  highd->add_option("--threads", hd_threads, "worker cap (1 = serial)")
      ->capture_default_str();
  highd->add_option("--output", hd_output, "CSV destination");

  // appendix-b
  std::vector<int> ab_d{10, 100, 1000, 5000};
  int ab_points = 2000, ab_trials = 200, ab_threads = 1;
  bool ab_resample = false;
  std::uint64_t ab_seed = 0;
  std::string ab_output;
  auto* appendix_b = app.add_subcommand(
      "appendix-b", "perceptron accuracy mean/variance vs dimension");
  appendix_b->add_option("--d", ab_d, "dimensions, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  appendix_b->add_option("--M", ab_points, "dataset size")->capture_default_str();
  appendix_b->add_option("--trials", ab_trials, "models per dimension")
      ->capture_default_str();
  appendix_b->add_flag("--resample", ab_resample,
                       "redraw the ground truth per dimension instead of e_1");
  add_seed_option(appendix_b, ab_seed);
  appendix_b->add_option("--threads", ab_threads, "worker cap (1 = serial)")
      ->capture_default_str();
  appendix_b->add_option("--output", ab_output, "CSV destination");

  // compare
  QuantumOptions cmp;
  std::uint64_t cmp_proposals = 100000;
  std::string cmp_output;
  auto* compare = app.add_subcommand(
      "compare", "quantum vote vs classical rejection sampling on one instance");
  add_quantum_options(compare, cmp);
  compare->add_option("--proposals", cmp_proposals, "number of proposals")
      ->capture_default_str();
  compare->add_option("--output", cmp_output, "CSV destination");

  try {
    app.parse(argc, argv);
    if (dj->parsed()) return run_dj(dj_n, dj_oracle, dj_output);
    if (qensemble->parsed()) return run_qensemble(qe, qe_output);
    if (dequantize->parsed())
      return run_dequantize(dq, dq_mode, dq_proposals, dq_threads, dq_output);
    if (concentration->parsed())
      return run_concentration(conc_family, conc_d, conc_points, conc_models, conc_hidden,
                               conc_seed, conc_threads, conc_output);
    if (highd->parsed())
      return run_highd(hd_d, hd_points, hd_models, hd_test, hd_seed, hd_threads, hd_output);
    if (appendix_b->parsed())
      return run_appendix_b(ab_d, ab_points, ab_trials, ab_resample, ab_seed, ab_threads,
                            ab_output);
    if (compare->parsed()) return run_compare(cmp, cmp_proposals, cmp_output);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
