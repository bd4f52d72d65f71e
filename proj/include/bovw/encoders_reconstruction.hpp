#pragma once

#include "bovw/code.hpp"
#include "bovw/codebook.hpp"

namespace bovw {

struct ReconConfig {
  double lambda = 0.15;       // regularizer weight (on unit-normalized codebooks)
  int k = 5;                  // sparsity budget (OMP) / neighborhood size (LLC)
  double sigma = 1.0;         // locality decay of the exact-LLC adaptor
  int max_solver_iters = 1000;
  double solver_tol = 1e-8;   // relative objective change (SPC/LCC), residual (OMP)
  double ridge = 1e-4;        // scaled by trace, conditions the local LLC Gram
};

struct SolveInfo {
  bool converged = true;
  int iters = 0;
  double objective = 0.0;
};

// Greedy orthogonal matching pursuit: pick the codeword most correlated
// with the residual, re-solve least squares on the active set; stops at k
// atoms, residual below solver_tol, or a rank-deficient active set.
Code encode_omp(const Vector& x, const Codebook& cb, const ReconConfig& cfg);

// min ||x - D s||^2 + lambda ||s||_1 by proximal gradient with backtracking.
// The objective is monotone non-increasing per iteration.
Code encode_spc(const Vector& x, const Codebook& cb, const ReconConfig& cfg,
                SolveInfo* info = nullptr);

// min ||x - D s||^2 + lambda || e_hat ⊙ |s| ||_1  s.t. 1^T s = 1, where
// e_hat_k = dist(x, d_k). Proximal gradient with an exact prox of the
// weighted l1 term restricted to the sum-to-one hyperplane.
Code encode_lcc(const Vector& x, const Codebook& cb, const ReconConfig& cfg,
                SolveInfo* info = nullptr);

// Fast LLC: solve the constrained least squares on the cfg.k nearest
// codewords in closed form via the shifted local covariance with
// ridge * trace regularization; zeros elsewhere.
Code encode_llc(const Vector& x, const Codebook& cb, const ReconConfig& cfg);

// Exact LLC over the full codebook with the exponential locality adaptor
// e = exp(dist(x, D) / sigma). Reference path; the k-NN variant above is
// the production encoder.
Code encode_llc_exact(const Vector& x, const Codebook& cb, const ReconConfig& cfg);

// Objective value of the SPC problem at s (used by solver tests).
double spc_objective(const Vector& x, const Matrix& centroids, const Vector& s, double lambda);

// Objective value of the LCC problem at s.
double lcc_objective(const Vector& x, const Matrix& centroids, const Vector& s, double lambda);

}  // namespace bovw
