#pragma once

#include <cstdint>
#include <vector>

#include "bovw/types.hpp"

namespace bovw {

/// K-means codebook: centroids plus the empirical fraction of training
/// descriptors assigned to each (consumed by SVC as p_i).
struct Codebook {
  Matrix centroids;  // K x D
  Vector priors;     // K, sums to 1
  std::vector<double> objective_trace;  // J after each Lloyd iteration

  int size() const { return static_cast<int>(centroids.rows()); }
  int dim() const { return static_cast<int>(centroids.cols()); }
};

/// Diagonal-covariance Gaussian mixture.
struct GmmModel {
  Vector weights;     // K, sums to 1
  Matrix means;       // K x D
  Matrix variances;   // K x D, every entry >= variance_floor
  double variance_floor = 0.0;
  std::vector<double> loglik_trace;  // mean log-likelihood after each EM iteration

  int size() const { return static_cast<int>(means.rows()); }
  int dim() const { return static_cast<int>(means.cols()); }
};

// Index of the nearest centroid per row, ties broken by lowest index.
std::vector<int> nearest_centroid(const Matrix& data, const Matrix& centroids, int jobs = 1);

// Lloyd iteration with k-means++ seeding. Empty clusters are re-seeded to
// the training point farthest from its assigned centroid. Deterministic
// under seed for any jobs value.
Codebook kmeans_fit(const Matrix& data, int K, int max_iters, std::uint64_t seed, int jobs = 1);

// EM on a diagonal-covariance mixture, initialized from kmeans_fit. The
// variance floor is variance_floor_rel times the mean per-dimension data
// variance. Stops at max_iters or relative log-likelihood improvement
// below 1e-6. Components whose weight collapses under 1e-8 are re-seeded
// (logged); log-likelihood is non-decreasing between re-seed events.
GmmModel gmm_fit(const Matrix& data, int K, int max_iters, std::uint64_t seed,
                 double variance_floor_rel = 1e-6, int jobs = 1);

// Posterior responsibilities gamma_k ∝ pi_k N(x; mu_k, Sigma_k), normalized
// to sum 1. Evaluated in log-space with max subtraction.
Vector posterior(const GmmModel& g, const Vector& x);

// Unnormalized log pi_k + log N(x; mu_k, Sigma_k) per component.
Vector component_log_density(const GmmModel& g, const Vector& x);

// log p(x) under the mixture.
double log_likelihood(const GmmModel& g, const Vector& x);

}  // namespace bovw
