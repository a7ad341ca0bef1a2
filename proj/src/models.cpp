#include "qens/models.hpp"

#include <cmath>
#include <stdexcept>

#include "qens/csv.hpp"
#include "qens/detail/parallel.hpp"

namespace qens {

std::string to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::linear: return "linear";
    case ModelFamily::perceptron: return "perceptron";
    case ModelFamily::mlp3: return "mlp3";
  }
  throw std::invalid_argument("unknown model family");
}

ModelFamily family_from_string(const std::string& name) {
  if (name == "linear") return ModelFamily::linear;
  if (name == "perceptron") return ModelFamily::perceptron;
  if (name == "mlp3") return ModelFamily::mlp3;
  throw std::invalid_argument("unknown model family '" + name + "'");
}

Dataset make_dataset(RealMatrix points, RealVector labels) {
  if (points.rows() < 1 || points.cols() < 1)
    throw std::invalid_argument("dataset must have at least one point and one dimension");
  if (labels.size() != points.rows())
    throw std::invalid_argument("label count must match point count");
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    if (std::abs(points.row(i).norm() - 1.0) > 1e-9)
      throw std::invalid_argument("dataset rows must lie on the unit sphere");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw std::invalid_argument("labels must be +1 or -1");
  return Dataset{std::move(points), std::move(labels)};
}

Dataset dataset_from_raw(RealMatrix raw_points, const RealVector& theta_star) {
  if (theta_star.size() != raw_points.cols())
    throw std::invalid_argument("ground-truth dimension must match the points");
  RealVector labels(raw_points.rows());
  for (Eigen::Index i = 0; i < raw_points.rows(); ++i) {
    const Real norm = raw_points.row(i).norm();
    if (!(norm > 0.0)) throw std::invalid_argument("cannot normalize a zero raw point");
    raw_points.row(i) /= norm;
    labels[i] = sign_threshold(raw_points.row(i).dot(theta_star));
  }
  return make_dataset(std::move(raw_points), std::move(labels));
}

Dataset generate_dataset(int num_points, int dim, std::uint64_t seed) {
  RealVector axis = RealVector::Zero(dim < 1 ? 1 : dim);
  axis[0] = 1.0;
  return generate_dataset(num_points, dim, seed, axis);
}

Dataset generate_dataset(int num_points, int dim, std::uint64_t seed,
                         const RealVector& theta_star) {
  if (num_points < 1) throw std::invalid_argument("dataset needs at least one point");
  if (dim < 1) throw std::invalid_argument("dataset dimension must be positive");
  Rng rng(seed);
  RealMatrix raw(num_points, dim);
  for (int i = 0; i < num_points; ++i)
    for (int j = 0; j < dim; ++j) raw(i, j) = rng.standard_normal();
  return dataset_from_raw(std::move(raw), theta_star);
}

void export_dataset_csv(const Dataset& data, const std::filesystem::path& destination) {
  CsvWriter writer(destination);
  std::string header;
  for (int j = 0; j < data.dim(); ++j) header += "x_" + std::to_string(j) + ",";
  header += "label";
  writer.write_line(header);
  for (int i = 0; i < data.size(); ++i) {
    std::string row;
    for (int j = 0; j < data.dim(); ++j) row += format_real(data.points(i, j)) + ",";
    row += format_real(data.labels[i]);
    writer.write_line(row);
  }
  writer.commit();
}

Dataset import_dataset_csv(const std::filesystem::path& source) {
  const auto rows = read_csv(source);
  if (rows.size() < 2) throw std::runtime_error("dataset csv needs a header and data rows");
  const auto cols = rows.front().size();
  if (cols < 2 || rows.front().back() != "label")
    throw std::runtime_error("dataset csv header must be x_0,...,label");
  const int dim = static_cast<int>(cols) - 1;
  const int num_points = static_cast<int>(rows.size()) - 1;
  RealMatrix points(num_points, dim);
  RealVector labels(num_points);
  for (int i = 0; i < num_points; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i) + 1];
    if (row.size() != cols) throw std::runtime_error("dataset csv has a ragged row");
    for (int j = 0; j < dim; ++j) points(i, j) = std::stod(row[static_cast<std::size_t>(j)]);
    labels[i] = std::stod(row.back());
  }
  return make_dataset(std::move(points), std::move(labels));
}

int parameter_count(ModelFamily family, int input_dim, int hidden_width) {
  if (input_dim < 1) throw std::invalid_argument("input dimension must be positive");
  switch (family) {
    case ModelFamily::linear:
    case ModelFamily::perceptron:
      return input_dim;
    case ModelFamily::mlp3:
      if (hidden_width < 1) throw std::invalid_argument("hidden width must be positive");
      return hidden_width * input_dim + 2 * hidden_width * hidden_width + hidden_width;
  }
  throw std::invalid_argument("unknown model family");
}

ModelSpec make_model_spec(ModelFamily family, RealVector theta, int input_dim,
                          int hidden_width) {
  const int expected = parameter_count(family, input_dim, hidden_width);
  if (theta.size() != expected)
    throw std::invalid_argument("parameter vector has the wrong length for this family");
  if ((theta.array().abs() > 1.0).any())
    throw std::invalid_argument("parameters must lie in [-1, 1]");
  return ModelSpec{family, std::move(theta), input_dim, hidden_width};
}

RealVector predict_batch(const ModelSpec& model, const RealMatrix& points) {
  if (points.cols() != model.input_dim)
    throw std::invalid_argument("point dimension must match the model input dimension");
  RealVector raw;
  if (model.family == ModelFamily::mlp3) {
    const int h = model.hidden_width;
    const int d = model.input_dim;
    const Real* p = model.theta.data();
    Eigen::Map<const RealMatrix> w1(p, h, d);
    Eigen::Map<const RealMatrix> w2(p + h * d, h, h);
    Eigen::Map<const RealMatrix> w3(p + h * d + h * h, h, h);
    Eigen::Map<const RealVector> w4(p + h * d + 2 * h * h, h);
    const RealMatrix z1 = (points * w1.transpose()).array().tanh().matrix();
    const RealMatrix z2 = (z1 * w2.transpose()).array().tanh().matrix();
    const RealMatrix z3 = (z2 * w3.transpose()).array().tanh().matrix();
    raw = z3 * w4;
  } else {
    raw = points * model.theta;
  }
  RealVector out(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) out[i] = sign_threshold(raw[i]);
  return out;
}

Real predict(const ModelSpec& model, const RealVector& x) {
  return predict_batch(model, x.transpose())[0];
}

Real accuracy(const ModelSpec& model, const Dataset& data) {
  const RealVector preds = predict_batch(model, data.points);
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < preds.size(); ++i)
    if (preds[i] == data.labels[i]) ++correct;
  return static_cast<Real>(correct) / static_cast<Real>(data.size());
}

std::vector<Real> accuracy_table(const std::vector<ModelSpec>& models, const Dataset& data,
                                 int threads) {
  std::vector<Real> table(models.size());
  detail::parallel_for(models.size(), threads,
                       [&](std::size_t j) { table[j] = accuracy(models[j], data); });
  return table;
}

ModelSpec sample_model(ModelFamily family, int input_dim, int hidden_width, Rng& rng) {
  const int count = parameter_count(family, input_dim, hidden_width);
  RealVector theta(count);
  for (int k = 0; k < count; ++k) theta[k] = rng.uniform(-1.0, 1.0);
  return ModelSpec{family, std::move(theta), input_dim, hidden_width};
}

}  // namespace qens
