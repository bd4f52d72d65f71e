#pragma once

#include <vector>

#include "bovw/code.hpp"
#include "bovw/codebook.hpp"

namespace bovw {

struct VotingConfig {
  double beta = 1.0;  // softness of the exponential weights
  int k = 5;          // neighborhood size for the localized variants
};

// Normalized weights w_i = exp(-beta ||x - d_i||^2) / sum_j exp(...), over
// the whole codebook. Evaluated with max subtraction so large distances
// cannot underflow the denominator to zero.
Vector soft_weights_all(const Vector& x, const Matrix& centroids, double beta);

// Same weights restricted to the k nearest codewords, zeros elsewhere.
Vector soft_weights_k(const Vector& x, const Matrix& centroids, double beta, int k);

// One-hot vote for the nearest codeword; ties go to the lowest index.
Code encode_vq(const Vector& x, const Codebook& cb);

// Soft assignment over all codewords (localized = false) or the cfg.k
// nearest only (localized = true). Output sums to 1.
Code encode_sa(const Vector& x, const Codebook& cb, const VotingConfig& cfg, bool localized);

// Salient coding: single vote at the nearest codeword weighted by its
// margin over the other k-1 neighbors. Requires cfg.k >= 2.
Code encode_sc(const Vector& x, const Codebook& cb, const VotingConfig& cfg);

// Group salient coding with group sizes 1..M (M = cfg.k). The nearest
// codeword carries the maximum group response; single-nonzero output.
Code encode_gsc(const Vector& x, const Codebook& cb, const VotingConfig& cfg);

// The raw group responses v^k for k = 1..M, exposed for verification.
// Each response sums the margins of the codewords ranked k+1..M+1 over
// the codeword ranked k (distances ascending).
std::vector<double> gsc_group_responses(const Vector& x, const Codebook& cb, int M);

}  // namespace bovw
