#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bovw/types.hpp"

namespace bovw {

/// One-vs-all linear classifier. Weight rows align with class_labels,
/// which are the sorted unique training labels.
struct LinearOvrModel {
  Matrix weights;  // num_classes x feature_dim
  Vector biases;   // num_classes
  double reg_c = 100.0;
  std::vector<std::string> class_labels;

  int num_classes() const { return static_cast<int>(weights.rows()); }
  int feature_dim() const { return static_cast<int>(weights.cols()); }
};

struct EvalMetrics {
  double accuracy = 0.0;
  std::vector<double> per_class_accuracy;
  std::vector<std::string> labels;
  Eigen::MatrixXi confusion;  // rows: true class, cols: predicted
};

// Per class, an L2-regularized hinge-loss model trained by seeded
// stochastic subgradient descent with averaged iterates (effective
// regularizer 1 / (reg_c * n)). Deterministic under seed for any jobs
// value; per-class trainers run independently.
LinearOvrModel train_ovr(const Matrix& features, const std::vector<std::string>& labels,
                         double reg_c, int epochs, std::uint64_t seed, int jobs = 1);

// w_c . x + b_c per class.
Vector predict_scores(const LinearOvrModel& m, const Vector& x);

// argmax of the scores, ties to the lowest class index.
int predict_index(const LinearOvrModel& m, const Vector& x);

EvalMetrics evaluate(const LinearOvrModel& m, const Matrix& features,
                     const std::vector<std::string>& labels);

// Mean regularized hinge objective of the one-vs-all problem for class
// class_idx; lets tests compare against the zero model.
double hinge_objective(const LinearOvrModel& m, int class_idx, const Matrix& features,
                       const std::vector<std::string>& labels);

}  // namespace bovw
