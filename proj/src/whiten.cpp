#include "bovw/whiten.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bovw/errors.hpp"

namespace bovw {

namespace {

// One streaming pass over the rows, Kahan-compensated sums of x and x x^T.
struct MomentAccumulator {
  explicit MomentAccumulator(int dim)
      : sum(Vector::Zero(dim)),
        sum_c(Vector::Zero(dim)),
        outer(Matrix::Zero(dim, dim)),
        outer_c(Matrix::Zero(dim, dim)) {}

  void add(const Eigen::Ref<const Vector>& x) {
    for (int i = 0; i < x.size(); ++i) {
      double y = x[i] - sum_c[i];
      double t = sum[i] + y;
      sum_c[i] = (t - sum[i]) - y;
      sum[i] = t;
      for (int j = i; j < x.size(); ++j) {
        double v = x[i] * x[j] - outer_c(i, j);
        double u = outer(i, j) + v;
        outer_c(i, j) = (u - outer(i, j)) - v;
        outer(i, j) = u;
      }
    }
  }

  Vector sum, sum_c;
  Matrix outer, outer_c;  // upper triangle only
};

}  // namespace

WhitenTransform fit_whiten(const Matrix& data, int output_dim, double eigenvalue_floor) {
  const int n = static_cast<int>(data.rows());
  const int dim = static_cast<int>(data.cols());
  if (output_dim <= 0 || output_dim > dim)
    throw ShapeError("fit_whiten: output_dim must be in [1, input_dim]");
  if (eigenvalue_floor <= 0.0)
    throw ConfigError("fit_whiten: eigenvalue_floor must be positive");
  if (n < output_dim + 1)
    throw InsufficientDataError("fit_whiten: need at least output_dim + 1 samples, got " +
                                std::to_string(n));

  MomentAccumulator acc(dim);
  for (int r = 0; r < n; ++r) acc.add(data.row(r).transpose());

  Vector mean = acc.sum / n;
  Matrix cov(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      double c = acc.outer(i, j) / n - mean[i] * mean[j];
      cov(i, j) = c;
      cov(j, i) = c;
    }

  if (cov.trace() <= 1e-300)
    throw DegenerateDataError("fit_whiten: zero-variance input (all rows identical?)");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success)
    throw DegenerateDataError("fit_whiten: eigendecomposition failed");

  // Eigen returns ascending order; take the top output_dim, descending.
  WhitenTransform t;
  t.input_dim = dim;
  t.output_dim = output_dim;
  t.eigenvalue_floor = eigenvalue_floor;
  t.mean = mean;
  t.projection.resize(dim, output_dim);
  t.eigenvalues.resize(output_dim);
  for (int k = 0; k < output_dim; ++k) {
    int src = dim - 1 - k;
    t.projection.col(k) = solver.eigenvectors().col(src);
    t.eigenvalues[k] = std::max(solver.eigenvalues()[src], eigenvalue_floor);
  }
  return t;
}

Vector apply_whiten(const WhitenTransform& t, const Vector& f) {
  if (f.size() != t.input_dim)
    throw ShapeError("apply_whiten: descriptor length " + std::to_string(f.size()) +
                     " != input_dim " + std::to_string(t.input_dim));
  Vector centered = f - t.mean;
  Vector projected = t.projection.transpose() * centered;
  return projected.array() / t.eigenvalues.array().sqrt();
}

Matrix apply_whiten(const WhitenTransform& t, const Matrix& rows) {
  if (rows.cols() != t.input_dim)
    throw ShapeError("apply_whiten: descriptor width " + std::to_string(rows.cols()) +
                     " != input_dim " + std::to_string(t.input_dim));
  Matrix centered = rows.rowwise() - t.mean.transpose();
  Matrix projected = centered * t.projection;
  Eigen::ArrayXd scale = t.eigenvalues.array().sqrt().inverse();
  return projected.array().rowwise() * scale.transpose();
}

}  // namespace bovw
