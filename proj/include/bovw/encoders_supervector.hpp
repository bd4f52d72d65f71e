#pragma once

#include <vector>

#include "bovw/code.hpp"
#include "bovw/codebook.hpp"
#include "bovw/encoders_reconstruction.hpp"

namespace bovw {

enum class Assignment { Hard, SoftK, SoftAll };

struct SuperVectorConfig {
  Assignment assignment = Assignment::Hard;
  int k = 5;                   // neighborhood for the soft-k variants
  double alpha_balance = 0.1;  // SVC / LTC scalar-vs-residual balance
  double beta = 1.0;           // softness of the omega weights
  int ltc_intrinsic_dim = 0;   // C; <= 0 means D / 2
};

// Fisher vector blocks per component: [grad wrt mean (D), grad wrt stddev
// (D)], concatenated over components. Total length 2 K D.
SuperVector encode_fv(const Vector& x, const GmmModel& g);

// Aggregated residuals: hard (nearest codeword only), soft-all (omega
// weights on every codeword), soft-k (omega' on the k nearest). K blocks
// of D.
SuperVector encode_vlad(const Vector& x, const Codebook& cb, const SuperVectorConfig& cfg);

// Residuals augmented with a weighted scalar per codeword, scaled by
// 1 / (N sqrt(p_i)) where N is the video's descriptor count. K blocks of
// 1 + D. Requires strictly positive priors.
SuperVector encode_svc(const Vector& x, const Codebook& cb, const SuperVectorConfig& cfg,
                       int n_descriptors);

/// Per-codeword tangent bases for LTC: D x C, orthonormal columns.
struct LtcProjections {
  std::vector<Matrix> basis;
  std::vector<bool> padded;  // true where a codeword had < C residual samples
  int intrinsic_dim = 0;
};

// Top-C principal directions of each codeword's weighted residual set.
// Codewords with fewer than C samples get zero-padded bases (flagged).
LtcProjections fit_ltc_projections(const std::vector<Matrix>& residuals, int C);

// Gathers the weighted residuals s(i)(x - d_i) over all rows of data,
// with s produced by encode_lcc. Input to fit_ltc_projections.
std::vector<Matrix> collect_ltc_residuals(const Matrix& data, const Codebook& cb,
                                          const ReconConfig& lcc_cfg, int jobs = 1);

// LTC blocks [alpha s(i), s(i)(x - d_i)^T U_i] from an externally supplied
// code. K blocks of 1 + C.
SuperVector ltc_from_code(const Code& code, const Vector& x, const Codebook& cb,
                          const LtcProjections& proj, double alpha);

// Convenience: codes x with encode_lcc, then applies ltc_from_code.
SuperVector encode_ltc(const Vector& x, const Codebook& cb, const LtcProjections& proj,
                       const SuperVectorConfig& cfg, const ReconConfig& lcc_cfg);

// Expected output length of each super-vector encoder (Dim contract).
int supervector_dim(const std::string& encoder_tag, int K, int D, int C = 0);

}  // namespace bovw
