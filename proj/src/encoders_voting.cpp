#include "bovw/encoders_voting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bovw/errors.hpp"
#include "bovw/log.hpp"
#include "bovw/neighbors.hpp"

namespace bovw {

Vector soft_weights_all(const Vector& x, const Matrix& centroids, double beta) {
  Vector d = all_distances(x, centroids);
  Eigen::ArrayXd logits = -beta * d.array().square();
  double m = logits.maxCoeff();
  Eigen::ArrayXd w = (logits - m).exp();
  return w / w.sum();
}

Vector soft_weights_k(const Vector& x, const Matrix& centroids, double beta, int k) {
  NeighborList nn = k_nearest(x, centroids, k);
  Eigen::ArrayXd logits(nn.size());
  for (std::size_t i = 0; i < nn.size(); ++i) logits[i] = -beta * nn[i].second * nn[i].second;
  double m = logits.maxCoeff();
  Eigen::ArrayXd w = (logits - m).exp();
  w /= w.sum();
  Vector out = Vector::Zero(centroids.rows());
  for (std::size_t i = 0; i < nn.size(); ++i) out[nn[i].first] = w[i];
  return out;
}

Code encode_vq(const Vector& x, const Codebook& cb) {
  NeighborList nn = k_nearest(x, cb.centroids, 1);
  Code c;
  c.values = Vector::Zero(cb.size());
  c.values[nn[0].first] = 1.0;
  c.nnz = 1;
  c.encoder_tag = "vq";
  return c;
}

Code encode_sa(const Vector& x, const Codebook& cb, const VotingConfig& cfg, bool localized) {
  if (cfg.beta <= 0.0) throw ConfigError("encode_sa: beta must be positive");
  Code c;
  if (localized) {
    if (cfg.k < 1 || cfg.k > cb.size())
      throw ConfigError("encode_sa: k must be in [1, K]");
    c.values = soft_weights_k(x, cb.centroids, cfg.beta, cfg.k);
    c.nnz = std::min(cfg.k, cb.size());
    c.encoder_tag = "sa-k";
  } else {
    c.values = soft_weights_all(x, cb.centroids, cfg.beta);
    c.nnz = cb.size();
    c.encoder_tag = "sa";
  }
  return c;
}

Code encode_sc(const Vector& x, const Codebook& cb, const VotingConfig& cfg) {
  if (cfg.k < 2) throw ConfigError("encode_sc: k must be >= 2");
  NeighborList nn = k_nearest(x, cb.centroids, cfg.k);
  double d1 = nn[0].second;
  double salience = 0.0;
  bool degenerate = false;
  for (std::size_t j = 1; j < nn.size(); ++j) {
    double dj = nn[j].second;
    if (dj == 0.0) {
      degenerate = true;  // coincides with two or more codewords
      continue;
    }
    salience += (dj - d1) / dj;
  }
  if (degenerate) log_warn("encode_sc: descriptor coincides with multiple codewords");
  Code c;
  c.values = Vector::Zero(cb.size());
  c.values[nn[0].first] = salience;
  c.nnz = 1;
  c.encoder_tag = "sc";
  return c;
}

std::vector<double> gsc_group_responses(const Vector& x, const Codebook& cb, int M) {
  if (M < 1) throw ConfigError("gsc_group_responses: M must be >= 1");
  // the response of group size k compares neighbors ranked k+1..M+1 against
  // rank k, so M+1 neighbors are needed
  NeighborList nn = k_nearest(x, cb.centroids, std::min(M + 1, cb.size()));
  std::vector<double> responses(M, 0.0);
  for (int k = 1; k <= M; ++k) {
    double dk = nn[std::min<std::size_t>(k - 1, nn.size() - 1)].second;
    double v = 0.0;
    for (int j = 1; j <= M + 1 - k; ++j) {
      std::size_t idx = std::min<std::size_t>(k - 1 + j, nn.size() - 1);
      v += nn[idx].second - dk;
    }
    responses[k - 1] = v;
  }
  return responses;
}

Code encode_gsc(const Vector& x, const Codebook& cb, const VotingConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("encode_gsc: group count must be >= 1");
  std::vector<double> responses = gsc_group_responses(x, cb, cfg.k);
  // the nearest codeword belongs to every group, so it carries the maximum
  double best = *std::max_element(responses.begin(), responses.end());
  NeighborList nn = k_nearest(x, cb.centroids, 1);
  Code c;
  c.values = Vector::Zero(cb.size());
  c.values[nn[0].first] = best;
  c.nnz = 1;
  c.encoder_tag = "gsc";
  return c;
}

}  // namespace bovw
