#pragma once

#include "bovw/types.hpp"

namespace bovw {

/// PCA projection with eigenvalue whitening, fitted on raw descriptors.
/// Maps an input feature f to diag(1/sqrt(lambda_i)) * U^T * (f - mean).
/// Immutable after fit; safe to share across threads.
struct WhitenTransform {
  Matrix projection;    // input_dim x output_dim, orthonormal columns
  Vector eigenvalues;   // length output_dim, non-increasing, >= eigenvalue_floor
  Vector mean;          // length input_dim, subtracted before projecting
  int input_dim = 0;
  int output_dim = 0;
  double eigenvalue_floor = 0.0;
};

// Fits the transform from the top principal components of the sample
// covariance. Covariance is accumulated in one streaming pass with
// compensated summation. Throws InsufficientDataError when rows <
// output_dim + 1 and DegenerateDataError when the input has no variance.
WhitenTransform fit_whiten(const Matrix& data, int output_dim,
                           double eigenvalue_floor = 1e-10);

// Applies the fitted transform to a single descriptor (length input_dim).
Vector apply_whiten(const WhitenTransform& t, const Vector& f);

// Row-wise batch variant.
Matrix apply_whiten(const WhitenTransform& t, const Matrix& rows);

}  // namespace bovw
