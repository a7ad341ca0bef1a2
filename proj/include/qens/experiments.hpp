#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "qens/dequantize.hpp"

namespace qens {

// Moments of the accuracy of num_models randomly drawn models of one family
// on a fresh dataset in dimension d.
struct ConcentrationRecord {
  ModelFamily family = ModelFamily::perceptron;
  int d = 0;
  int num_points = 0;  // dataset size
  int num_models = 0;  // sampled models
  Real mean_accuracy = 0.0;
  Real std_accuracy = 0.0;  // sample standard deviation
};

// Threshold-selected weighted ensemble evaluated on held-out points.
struct HighDResult {
  int d = 0;
  int num_points = 0;
  int num_models = 0;
  int num_test_points = 0;
  std::uint64_t accepted_count = 0;
  Real accepted_fraction = 0.0;
  Real test_accuracy = 0.0;
  std::uint64_t seed = 0;
};

// Mean and variance of perceptron accuracy vs dimension, with the ground
// truth either pinned to the first axis or redrawn per dimension.
struct AccuracyMomentsRecord {
  int d = 0;
  int num_points = 0;
  int trials = 0;
  bool resampled_ground_truth = false;
  Real mean_accuracy = 0.0;
  Real var_accuracy = 0.0;  // sample variance
};

// For each d: draw a dataset, score num_models sampled models, record the
// mean and standard deviation of their accuracies. Model j in run i always
// comes from RNG substream (seed, model stream, i, j), so the records do
// not depend on the thread count.
std::vector<ConcentrationRecord> concentration_study(ModelFamily family,
                                                     const std::vector<int>& d_list,
                                                     int num_points, int num_models,
                                                     std::uint64_t seed,
                                                     int hidden_width = kDefaultHiddenWidth,
                                                     int threads = 1);

// Reference curve scale / sqrt(d), the rate a central-limit (Berry-Esseen
// style) bound predicts for the accuracy spread.
std::vector<std::pair<int, Real>> berry_esseen_reference(const std::vector<int>& d_list,
                                                         Real scale);

// Scale that pins the reference curve to the smallest-d record.
Real fit_berry_esseen_scale(const std::vector<ConcentrationRecord>& records);

// Least-squares slope of log(std_accuracy) against log(d). A slope near
// -1/2 matches the reference rate.
Real fit_decay_slope(const std::vector<ConcentrationRecord>& records);

// Sample num_models perceptrons, keep those with training accuracy above
// 1/2 (weighted by accuracy), and report the ensemble's weight-averaged
// member accuracy on a held-out test set.
HighDResult highd_experiment(int d, int num_points, int num_models, int num_test_points,
                             std::uint64_t seed, int threads = 1);

std::vector<AccuracyMomentsRecord> accuracy_moments_study(const std::vector<int>& d_list,
                                                          int num_points, int trials,
                                                          std::uint64_t seed,
                                                          bool resample_ground_truth,
                                                          int threads = 1);

// CSV schemas (one header row, then one row per record, 17-digit reals):
//   concentration: family,d,num_points,num_models,mean_accuracy,std_accuracy
//   highd: d,num_points,num_models,num_test_points,accepted_count,
//          accepted_fraction,test_accuracy,seed
//   moments: d,num_points,trials,resampled_ground_truth,mean_accuracy,
//            var_accuracy
// Extra comment lines are written at the end, each prefixed with "# ".
void export_csv(const std::vector<ConcentrationRecord>& records,
                const std::filesystem::path& destination,
                const std::vector<std::string>& comments = {});
void export_csv(const HighDResult& result, const std::filesystem::path& destination,
                const std::vector<std::string>& comments = {});
void export_csv(const std::vector<AccuracyMomentsRecord>& records,
                const std::filesystem::path& destination,
                const std::vector<std::string>& comments = {});

std::vector<ConcentrationRecord> import_concentration_csv(
    const std::filesystem::path& source);

}  // namespace qens
