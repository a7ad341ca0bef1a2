#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qens/rng.hpp"
#include "qens/types.hpp"

namespace qens {

enum class ModelFamily { linear, perceptron, mlp3 };

std::string to_string(ModelFamily family);
ModelFamily family_from_string(const std::string& name);

inline constexpr int kDefaultHiddenWidth = 32;

// Sign with the tie broken upward: sigma(0) = +1.
inline Real sign_threshold(Real v) { return v >= 0.0 ? 1.0 : -1.0; }

// Binary-labelled points on the unit sphere.
struct Dataset {
  RealMatrix points;  // num_points x dim, rows normalized
  RealVector labels;  // entries in {-1, +1}
  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

// Validates shapes, row normalization, and label values.
Dataset make_dataset(RealMatrix points, RealVector labels);

// Normalizes raw rows onto the unit sphere and labels each one by
// sign(<x, theta_star>).
Dataset dataset_from_raw(RealMatrix raw_points, const RealVector& theta_star);

// Rows drawn i.i.d. standard normal, then normalized. The two-argument form
// uses the first coordinate axis as ground truth (label = sign of the first
// entry); the explicit form labels by an arbitrary theta_star.
Dataset generate_dataset(int num_points, int dim, std::uint64_t seed);
Dataset generate_dataset(int num_points, int dim, std::uint64_t seed,
                         const RealVector& theta_star);

// Header x_0,...,x_{d-1},label; values printed with 17 significant digits so
// a round trip reproduces the dataset exactly.
void export_dataset_csv(const Dataset& data, const std::filesystem::path& destination);
Dataset import_dataset_csv(const std::filesystem::path& source);

// A classifier with flattened parameters, every entry in [-1, 1].
//
// linear / perceptron: prediction = sigma(theta . x), theta of length d.
// mlp3: three tanh layers of width h and a linear readout,
//   sigma(w4 . tanh(W3 tanh(W2 tanh(W1 x)))),
// with theta packing [W1 (h x d), W2 (h x h), W3 (h x h), w4 (h)] in that
// order, each matrix column-major.
struct ModelSpec {
  ModelFamily family = ModelFamily::perceptron;
  RealVector theta;
  int input_dim = 0;
  int hidden_width = kDefaultHiddenWidth;
};

int parameter_count(ModelFamily family, int input_dim, int hidden_width = kDefaultHiddenWidth);

// Validates the parameter count for the family and the [-1, 1] range.
ModelSpec make_model_spec(ModelFamily family, RealVector theta, int input_dim,
                          int hidden_width = kDefaultHiddenWidth);

// Hard label in {-1, +1}.
Real predict(const ModelSpec& model, const RealVector& x);
RealVector predict_batch(const ModelSpec& model, const RealMatrix& points);

// Fraction of points labelled correctly; an exact integer multiple of 1/M.
Real accuracy(const ModelSpec& model, const Dataset& data);

// Accuracy of many models on one dataset; safe to parallelize because each
// model is scored independently.
std::vector<Real> accuracy_table(const std::vector<ModelSpec>& models, const Dataset& data,
                                 int threads = 1);

// Parameters drawn i.i.d. uniform on [-1, 1).
ModelSpec sample_model(ModelFamily family, int input_dim, int hidden_width, Rng& rng);

}  // namespace qens
