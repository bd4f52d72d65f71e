#include "bovw/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "bovw/errors.hpp"
#include "bovw/parallel.hpp"
#include "bovw/rng.hpp"

namespace bovw {

namespace {

std::vector<std::string> sorted_unique_labels(const std::vector<std::string>& labels) {
  std::set<std::string> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

// Pegasos-style primal subgradient descent on
//   lambda/2 ||w||^2 + 1/n sum_i max(0, 1 - y_i (w.x_i + b))
// with an unregularized bias, iterate averaging after a one-epoch burn-in,
// and the usual 1/sqrt(lambda) ball projection.
void train_binary(const Matrix& X, const std::vector<int>& y, double lambda, int epochs,
                  std::uint64_t seed, Eigen::Ref<Eigen::RowVectorXd> w_out, double& b_out) {
  const int n = static_cast<int>(X.rows());
  const int dim = static_cast<int>(X.cols());
  Vector w = Vector::Zero(dim);
  double b = 0.0;
  Vector w_avg = Vector::Zero(dim);
  double b_avg = 0.0;
  std::size_t avg_count = 0;
  const double radius = 1.0 / std::sqrt(lambda);

  auto rng = make_rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::int64_t t = 1;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int idx : order) {
      double eta = 1.0 / (lambda * static_cast<double>(t + 1));
      double margin = y[idx] * (w.dot(X.row(idx)) + b);
      w *= (1.0 - eta * lambda);
      if (margin < 1.0) {
        w += (eta * y[idx]) * X.row(idx).transpose();
        b += eta * y[idx];
      }
      double norm = w.norm();
      if (norm > radius) w *= radius / norm;
      if (epoch >= 1 || epochs == 1) {
        w_avg += w;
        b_avg += b;
        ++avg_count;
      }
      ++t;
    }
  }
  if (avg_count > 0) {
    w_avg /= static_cast<double>(avg_count);
    b_avg /= static_cast<double>(avg_count);
  } else {
    w_avg = w;
    b_avg = b;
  }
  w_out = w_avg.transpose();
  b_out = b_avg;
}

}  // namespace

LinearOvrModel train_ovr(const Matrix& features, const std::vector<std::string>& labels,
                         double reg_c, int epochs, std::uint64_t seed, int jobs) {
  const int n = static_cast<int>(features.rows());
  if (n == 0 || labels.size() != static_cast<std::size_t>(n))
    throw ShapeError("train_ovr: features/labels size mismatch");
  if (reg_c <= 0.0) throw ConfigError("train_ovr: reg_c must be positive");
  if (epochs < 1) throw ConfigError("train_ovr: epochs must be >= 1");

  LinearOvrModel m;
  m.class_labels = sorted_unique_labels(labels);
  const int num_classes = static_cast<int>(m.class_labels.size());
  if (num_classes < 2) throw DegenerateDataError("train_ovr: need at least 2 classes");
  m.reg_c = reg_c;
  m.weights.resize(num_classes, features.cols());
  m.biases.resize(num_classes);

  const double lambda = 1.0 / (reg_c * n);
  std::vector<std::vector<int>> targets(num_classes, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    int c = static_cast<int>(std::lower_bound(m.class_labels.begin(), m.class_labels.end(),
                                              labels[i]) -
                             m.class_labels.begin());
    targets[c][i] = 1;
  }

  parallel_for(static_cast<std::size_t>(num_classes), jobs, [&](std::size_t c) {
    double b = 0.0;
    train_binary(features, targets[c], lambda, epochs, derive_seed(seed, c), m.weights.row(c), b);
    m.biases[static_cast<int>(c)] = b;
  });
  return m;
}

Vector predict_scores(const LinearOvrModel& m, const Vector& x) {
  if (x.size() != m.feature_dim())
    throw ShapeError("predict_scores: feature length " + std::to_string(x.size()) +
                     " != model dim " + std::to_string(m.feature_dim()));
  return m.weights * x + m.biases;
}

int predict_index(const LinearOvrModel& m, const Vector& x) {
  Vector s = predict_scores(m, x);
  int best = 0;
  for (int c = 1; c < s.size(); ++c)
    if (s[c] > s[best]) best = c;  // ties keep the lowest index
  return best;
}

EvalMetrics evaluate(const LinearOvrModel& m, const Matrix& features,
                     const std::vector<std::string>& labels) {
  const int n = static_cast<int>(features.rows());
  if (n == 0) throw EmptyInputError("evaluate: empty test set");
  if (labels.size() != static_cast<std::size_t>(n))
    throw ShapeError("evaluate: features/labels size mismatch");

  EvalMetrics metrics;
  metrics.labels = m.class_labels;
  const int num_classes = m.num_classes();
  metrics.confusion = Eigen::MatrixXi::Zero(num_classes, num_classes);

  int correct = 0;
  for (int i = 0; i < n; ++i) {
    auto it = std::lower_bound(m.class_labels.begin(), m.class_labels.end(), labels[i]);
    if (it == m.class_labels.end() || *it != labels[i])
      throw ConfigError("evaluate: test label '" + labels[i] + "' unseen during training");
    int truth = static_cast<int>(it - m.class_labels.begin());
    int pred = predict_index(m, features.row(i).transpose());
    metrics.confusion(truth, pred) += 1;
    if (pred == truth) ++correct;
  }
  metrics.accuracy = static_cast<double>(correct) / n;
  metrics.per_class_accuracy.resize(num_classes, 0.0);
  for (int c = 0; c < num_classes; ++c) {
    int total = metrics.confusion.row(c).sum();
    metrics.per_class_accuracy[c] =
        total > 0 ? static_cast<double>(metrics.confusion(c, c)) / total : 0.0;
  }
  return metrics;
}

double hinge_objective(const LinearOvrModel& m, int class_idx, const Matrix& features,
                       const std::vector<std::string>& labels) {
  const int n = static_cast<int>(features.rows());
  const double lambda = 1.0 / (m.reg_c * n);
  double loss = 0.0;
  for (int i = 0; i < n; ++i) {
    int y = (labels[i] == m.class_labels[class_idx]) ? 1 : -1;
    double margin = y * (m.weights.row(class_idx).dot(features.row(i)) + m.biases[class_idx]);
    loss += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * lambda * m.weights.row(class_idx).squaredNorm() + loss / n;
}

}  // namespace bovw
