#include "qens/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qens/csv.hpp"
#include "qens/detail/parallel.hpp"

namespace qens {

namespace {

// Substream layout under one master seed. Run index i is the position in
// the d list; model index j identifies one sampled model within a run.
constexpr std::uint64_t kDatasetStream = 1;
constexpr std::uint64_t kModelStream = 2;
constexpr std::uint64_t kGroundTruthStream = 3;

// Models are scored in fixed panels of this many columns per matrix
// product, independent of the thread count, so accuracies come out
// bit-identical however the panels are scheduled.
constexpr std::size_t kPanelWidth = 64;

Real neumaier_total(const std::vector<Real>& values) {
  Real sum = 0.0, compensation = 0.0;
  for (const Real v : values) {
    const Real t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      compensation += (sum - t) + v;
    else
      compensation += (v - t) + sum;
    sum = t;
  }
  return sum + compensation;
}

std::pair<Real, Real> mean_and_sample_variance(const std::vector<Real>& values) {
  if (values.size() < 2)
    throw std::invalid_argument("need at least two values for a sample variance");
  const Real n = static_cast<Real>(values.size());
  const Real mean = neumaier_total(values) / n;
  std::vector<Real> squared(values.size());
  std::transform(values.begin(), values.end(), squared.begin(),
                 [mean](Real v) { return (v - mean) * (v - mean); });
  return {mean, neumaier_total(squared) / (n - 1.0)};
}

ModelSpec sampled_model(ModelFamily family, int d, int hidden_width, const Rng& master,
                        std::uint64_t run, std::uint64_t j) {
  Rng rng = master.substream(kModelStream, run, j);
  return sample_model(family, d, hidden_width, rng);
}

// Accuracy of num_models freshly sampled models on one dataset. The thetas
// of sign models are packed into fixed-width panels and scored with one
// matrix product per panel; mlp3 models are scored one by one.
std::vector<Real> sampled_accuracy_table(ModelFamily family, const Dataset& data,
                                         int num_models, const Rng& master,
                                         std::uint64_t run, int hidden_width, int threads) {
  if (num_models < 1) throw std::invalid_argument("need at least one sampled model");
  std::vector<Real> table(static_cast<std::size_t>(num_models));
  if (family == ModelFamily::mlp3) {
    detail::parallel_for(table.size(), threads, [&](std::size_t j) {
      table[j] = accuracy(sampled_model(family, data.dim(), hidden_width, master, run, j),
                          data);
    });
    return table;
  }
  const std::size_t panels =
      (table.size() + kPanelWidth - 1) / kPanelWidth;
  detail::parallel_for(panels, threads, [&](std::size_t panel) {
    const std::size_t j0 = panel * kPanelWidth;
    const auto width =
        static_cast<Eigen::Index>(std::min(kPanelWidth, table.size() - j0));
    RealMatrix thetas(data.dim(), width);
    for (Eigen::Index jj = 0; jj < width; ++jj)
      thetas.col(jj) =
          sampled_model(family, data.dim(), hidden_width, master, run, j0 + jj).theta;
    const RealMatrix scores = data.points * thetas;
    for (Eigen::Index jj = 0; jj < width; ++jj) {
      Eigen::Index correct = 0;
      for (Eigen::Index i = 0; i < scores.rows(); ++i)
        if (sign_threshold(scores(i, jj)) == data.labels[i]) ++correct;
      table[j0 + static_cast<std::size_t>(jj)] =
          static_cast<Real>(correct) / static_cast<Real>(data.size());
    }
  });
  return table;
}

void check_common(const std::vector<int>& d_list, int num_points, int num_models) {
  if (d_list.empty()) throw std::invalid_argument("dimension list must not be empty");
  for (const int d : d_list)
    if (d < 1) throw std::invalid_argument("dimensions must be positive");
  if (num_points < 1) throw std::invalid_argument("need at least one data point");
  if (num_models < 2) throw std::invalid_argument("need at least two sampled models");
}

}  // namespace

std::vector<ConcentrationRecord> concentration_study(ModelFamily family,
                                                     const std::vector<int>& d_list,
                                                     int num_points, int num_models,
                                                     std::uint64_t seed, int hidden_width,
                                                     int threads) {
  check_common(d_list, num_points, num_models);
  const Rng master(seed);
  std::vector<ConcentrationRecord> records;
  records.reserve(d_list.size());
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    const int d = d_list[i];
    const Dataset data =
        generate_dataset(num_points, d, master.substream(kDatasetStream, i).key());
    const std::vector<Real> acc =
        sampled_accuracy_table(family, data, num_models, master, i, hidden_width, threads);
    const auto [mean, var] = mean_and_sample_variance(acc);
    records.push_back(
        {family, d, num_points, num_models, mean, std::sqrt(var)});
  }
  return records;
}

std::vector<std::pair<int, Real>> berry_esseen_reference(const std::vector<int>& d_list,
                                                         Real scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("reference scale must be positive");
  std::vector<std::pair<int, Real>> curve;
  curve.reserve(d_list.size());
  for (const int d : d_list) {
    if (d < 1) throw std::invalid_argument("dimensions must be positive");
    curve.emplace_back(d, scale / std::sqrt(static_cast<Real>(d)));
  }
  return curve;
}

Real fit_berry_esseen_scale(const std::vector<ConcentrationRecord>& records) {
  const ConcentrationRecord* smallest = nullptr;
  for (const auto& r : records)
    if (r.std_accuracy > 0.0 && (smallest == nullptr || r.d < smallest->d)) smallest = &r;
  if (smallest == nullptr)
    throw std::invalid_argument("no record with positive spread to pin the scale");
  return smallest->std_accuracy * std::sqrt(static_cast<Real>(smallest->d));
}

Real fit_decay_slope(const std::vector<ConcentrationRecord>& records) {
  std::vector<Real> xs, ys;
  for (const auto& r : records) {
    if (r.std_accuracy > 0.0) {
      xs.push_back(std::log(static_cast<Real>(r.d)));
      ys.push_back(std::log(r.std_accuracy));
    }
  }
  if (xs.size() < 2)
    throw std::invalid_argument("need at least two positive-spread records to fit a slope");
  const Real n = static_cast<Real>(xs.size());
  const Real x_mean = neumaier_total(xs) / n;
  const Real y_mean = neumaier_total(ys) / n;
  Real sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("dimension values must not all coincide");
  return sxy / sxx;
}

HighDResult highd_experiment(int d, int num_points, int num_models, int num_test_points,
                             std::uint64_t seed, int threads) {
  check_common({d}, num_points, num_models);
  if (num_test_points < 1) throw std::invalid_argument("need at least one test point");
  const Rng master(seed);
  const Dataset train =
      generate_dataset(num_points, d, master.substream(kDatasetStream, 0).key());
  const Dataset test =
      generate_dataset(num_test_points, d, master.substream(kDatasetStream, 1).key());

  const std::vector<Real> acc = sampled_accuracy_table(ModelFamily::perceptron, train,
                                                       num_models, master, 0, 1, threads);
  const AcceptedEnsemble kept =
      select_above_half(Eigen::Map<const RealVector>(acc.data(),
                                                     static_cast<Eigen::Index>(acc.size())));
  if (kept.empty())
    throw EmptyEnsembleError("no sampled model scored above one half");

  // The ensemble score is the weight-averaged accuracy of its members on the
  // held-out set: the expected accuracy of one model drawn from the selected,
  // accuracy-weighted distribution. Unlike a majority vote it does not sharpen
  // as more near-random members are added, which is exactly the effect this
  // experiment measures. Members are scored in the same fixed panels and the
  // per-panel sums are reduced in panel order afterwards.
  const std::size_t count = kept.members.size();
  const std::size_t panels = (count + kPanelWidth - 1) / kPanelWidth;
  std::vector<Real> weighted_acc(panels, 0.0);
  std::vector<Real> weight_total(panels, 0.0);
  detail::parallel_for(panels, threads, [&](std::size_t panel) {
    const std::size_t j0 = panel * kPanelWidth;
    const auto width = static_cast<Eigen::Index>(std::min(kPanelWidth, count - j0));
    RealMatrix thetas(d, width);
    for (Eigen::Index jj = 0; jj < width; ++jj)
      thetas.col(jj) = sampled_model(ModelFamily::perceptron, d, 1, master, 0,
                                     kept.members[j0 + static_cast<std::size_t>(jj)].theta_id)
                           .theta;
    const RealMatrix scores = test.points * thetas;
    Real acc_sum = 0.0, w_sum = 0.0;
    for (Eigen::Index jj = 0; jj < width; ++jj) {
      Eigen::Index agree = 0;
      for (Eigen::Index i = 0; i < scores.rows(); ++i)
        if (sign_threshold(scores(i, jj)) == test.labels[i]) ++agree;
      const Real weight = kept.members[j0 + static_cast<std::size_t>(jj)].weight;
      acc_sum += weight * (static_cast<Real>(agree) / static_cast<Real>(test.size()));
      w_sum += weight;
    }
    weighted_acc[panel] = acc_sum;
    weight_total[panel] = w_sum;
  });

  HighDResult result;
  result.d = d;
  result.num_points = num_points;
  result.num_models = num_models;
  result.num_test_points = num_test_points;
  result.accepted_count = static_cast<std::uint64_t>(count);
  result.accepted_fraction = static_cast<Real>(count) / static_cast<Real>(num_models);
  result.test_accuracy = neumaier_total(weighted_acc) / neumaier_total(weight_total);
  result.seed = seed;
  return result;
}

std::vector<AccuracyMomentsRecord> accuracy_moments_study(const std::vector<int>& d_list,
                                                          int num_points, int trials,
                                                          std::uint64_t seed,
                                                          bool resample_ground_truth,
                                                          int threads) {
  check_common(d_list, num_points, trials);
  const Rng master(seed);
  std::vector<AccuracyMomentsRecord> records;
  records.reserve(d_list.size());
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    const int d = d_list[i];
    RealVector theta_star = RealVector::Zero(d);
    if (resample_ground_truth) {
      Rng rng = master.substream(kGroundTruthStream, i);
      for (int j = 0; j < d; ++j) theta_star[j] = rng.uniform(-1.0, 1.0);
    } else {
      theta_star[0] = 1.0;
    }
    const Dataset data = generate_dataset(
        num_points, d, master.substream(kDatasetStream, i).key(), theta_star);
    const std::vector<Real> acc = sampled_accuracy_table(ModelFamily::perceptron, data,
                                                         trials, master, i, 1, threads);
    const auto [mean, var] = mean_and_sample_variance(acc);
    records.push_back({d, num_points, trials, resample_ground_truth, mean, var});
  }
  return records;
}

namespace {

void write_comments(CsvWriter& writer, const std::vector<std::string>& comments) {
  for (const auto& c : comments) writer.write_line("# " + c);
}

}  // namespace

void export_csv(const std::vector<ConcentrationRecord>& records,
                const std::filesystem::path& destination,
                const std::vector<std::string>& comments) {
  CsvWriter writer(destination);
  writer.write_line("family,d,num_points,num_models,mean_accuracy,std_accuracy");
  for (const auto& r : records)
    writer.write_line(to_string(r.family) + "," + std::to_string(r.d) + "," +
                      std::to_string(r.num_points) + "," + std::to_string(r.num_models) +
                      "," + format_real(r.mean_accuracy) + "," +
                      format_real(r.std_accuracy));
  write_comments(writer, comments);
  writer.commit();
}

void export_csv(const HighDResult& result, const std::filesystem::path& destination,
                const std::vector<std::string>& comments) {
  CsvWriter writer(destination);
  writer.write_line(
      "d,num_points,num_models,num_test_points,accepted_count,accepted_fraction,"
      "test_accuracy,seed");
  writer.write_line(std::to_string(result.d) + "," + std::to_string(result.num_points) +
                    "," + std::to_string(result.num_models) + "," +
                    std::to_string(result.num_test_points) + "," +
                    std::to_string(result.accepted_count) + "," +
                    format_real(result.accepted_fraction) + "," +
                    format_real(result.test_accuracy) + "," + std::to_string(result.seed));
  write_comments(writer, comments);
  writer.commit();
}

void export_csv(const std::vector<AccuracyMomentsRecord>& records,
                const std::filesystem::path& destination,
                const std::vector<std::string>& comments) {
  CsvWriter writer(destination);
  writer.write_line("d,num_points,trials,resampled_ground_truth,mean_accuracy,var_accuracy");
  for (const auto& r : records)
    writer.write_line(std::to_string(r.d) + "," + std::to_string(r.num_points) + "," +
                      std::to_string(r.trials) + "," +
                      (r.resampled_ground_truth ? "1" : "0") + "," +
                      format_real(r.mean_accuracy) + "," + format_real(r.var_accuracy));
  write_comments(writer, comments);
  writer.commit();
}

std::vector<ConcentrationRecord> import_concentration_csv(
    const std::filesystem::path& source) {
  const auto rows = read_csv(source);
  if (rows.empty() ||
      rows.front() != std::vector<std::string>{"family", "d", "num_points", "num_models",
                                               "mean_accuracy", "std_accuracy"})
    throw std::runtime_error("unexpected concentration csv header");
  std::vector<ConcentrationRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 6) throw std::runtime_error("concentration csv has a ragged row");
    records.push_back({family_from_string(row[0]), std::stoi(row[1]), std::stoi(row[2]),
                       std::stoi(row[3]), std::stod(row[4]), std::stod(row[5])});
  }
  return records;
}

}  // namespace qens
