#include "bovw/encoders_supervector.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "bovw/errors.hpp"
#include "bovw/log.hpp"
#include "bovw/encoders_voting.hpp"
#include "bovw/neighbors.hpp"
#include "bovw/parallel.hpp"

namespace bovw {

SuperVector encode_fv(const Vector& x, const GmmModel& g) {
  if (x.size() != g.dim()) throw ShapeError("encode_fv: dimension mismatch");
  const int K = g.size();
  const int D = g.dim();
  Vector gamma = posterior(g, x);

  SuperVector sv;
  sv.layout = {K, 2 * D};
  sv.values.resize(sv.layout.total());
  sv.encoder_tag = "fv";
  for (int k = 0; k < K; ++k) {
    Eigen::ArrayXd sigma = g.variances.row(k).transpose().array().sqrt();
    Eigen::ArrayXd centered = (x - g.means.row(k).transpose()).array();
    Eigen::ArrayXd u = centered / sigma;
    double inv_sqrt_pi = 1.0 / std::sqrt(g.weights[k]);
    sv.values.segment(k * 2 * D, D) = (gamma[k] * inv_sqrt_pi * u).matrix();
    sv.values.segment(k * 2 * D + D, D) =
        (gamma[k] / std::sqrt(2.0 * g.weights[k]) * (u.square() - 1.0)).matrix();
  }
  return sv;
}

namespace {

// the assignment weights shared by the VLAD / SVC families
Vector assignment_weights(const Vector& x, const Codebook& cb, const SuperVectorConfig& cfg) {
  switch (cfg.assignment) {
    case Assignment::Hard: {
      Vector w = Vector::Zero(cb.size());
      w[k_nearest(x, cb.centroids, 1)[0].first] = 1.0;
      return w;
    }
    case Assignment::SoftAll:
      return soft_weights_all(x, cb.centroids, cfg.beta);
    case Assignment::SoftK:
      if (cfg.k < 1 || cfg.k > cb.size())
        throw ConfigError("supervector: soft-k neighborhood must be in [1, K]");
      return soft_weights_k(x, cb.centroids, cfg.beta, cfg.k);
  }
  throw ConfigError("supervector: unknown assignment");
}

const char* vlad_tag(Assignment a) {
  switch (a) {
    case Assignment::Hard: return "vlad";
    case Assignment::SoftK: return "vlad-k";
    case Assignment::SoftAll: return "vlad-all";
  }
  return "vlad";
}

const char* svc_tag(Assignment a) {
  switch (a) {
    case Assignment::Hard: return "svc";
    case Assignment::SoftK: return "svc-k";
    case Assignment::SoftAll: return "svc-all";
  }
  return "svc";
}

}  // namespace

SuperVector encode_vlad(const Vector& x, const Codebook& cb, const SuperVectorConfig& cfg) {
  if (x.size() != cb.dim()) throw ShapeError("encode_vlad: dimension mismatch");
  const int K = cb.size();
  const int D = cb.dim();
  Vector w = assignment_weights(x, cb, cfg);

  SuperVector sv;
  sv.layout = {K, D};
  sv.values = Vector::Zero(sv.layout.total());
  sv.encoder_tag = vlad_tag(cfg.assignment);
  for (int i = 0; i < K; ++i) {
    if (w[i] == 0.0) continue;
    sv.values.segment(i * D, D) = w[i] * (x - cb.centroids.row(i).transpose());
  }
  return sv;
}

SuperVector encode_svc(const Vector& x, const Codebook& cb, const SuperVectorConfig& cfg,
                       int n_descriptors) {
  if (x.size() != cb.dim()) throw ShapeError("encode_svc: dimension mismatch");
  if (n_descriptors < 1) throw ConfigError("encode_svc: n_descriptors must be >= 1");
  const int K = cb.size();
  const int D = cb.dim();
  if ((cb.priors.array() <= 0.0).any())
    throw ConfigError("encode_svc: codebook has zero priors; SVC needs p_i > 0");
  Vector w = assignment_weights(x, cb, cfg);

  SuperVector sv;
  sv.layout = {K, 1 + D};
  sv.values = Vector::Zero(sv.layout.total());
  sv.encoder_tag = svc_tag(cfg.assignment);
  for (int i = 0; i < K; ++i) {
    if (w[i] == 0.0) continue;
    double scale = w[i] / (n_descriptors * std::sqrt(cb.priors[i]));
    sv.values[i * (1 + D)] = cfg.alpha_balance * scale;
    sv.values.segment(i * (1 + D) + 1, D) = scale * (x - cb.centroids.row(i).transpose());
  }
  return sv;
}

// ---------------------------------------------------------------------------
// LTC
// ---------------------------------------------------------------------------

LtcProjections fit_ltc_projections(const std::vector<Matrix>& residuals, int C) {
  if (C < 1) throw ConfigError("fit_ltc_projections: C must be >= 1");
  LtcProjections proj;
  proj.intrinsic_dim = C;
  proj.basis.reserve(residuals.size());
  proj.padded.reserve(residuals.size());
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const Matrix& R = residuals[i];
    const int D = static_cast<int>(R.cols());
    if (C > D) throw ConfigError("fit_ltc_projections: C exceeds descriptor dimension");
    Matrix U = Matrix::Zero(D, C);
    bool padded = R.rows() < C;
    if (R.rows() > 0) {
      // principal directions about the codeword (residuals are already
      // relative to it), from the scatter matrix R^T R
      Matrix scatter = R.transpose() * R;
      Eigen::SelfAdjointEigenSolver<Matrix> solver(scatter);
      int avail = std::min<int>(C, static_cast<int>(R.rows()));
      for (int c = 0; c < avail; ++c) U.col(c) = solver.eigenvectors().col(D - 1 - c);
    }
    if (padded)
      log_warn("fit_ltc_projections: codeword " + std::to_string(i) + " has only " +
               std::to_string(R.rows()) + " residuals (< C = " + std::to_string(C) +
               "); basis zero-padded");
    proj.basis.push_back(std::move(U));
    proj.padded.push_back(padded);
  }
  return proj;
}

std::vector<Matrix> collect_ltc_residuals(const Matrix& data, const Codebook& cb,
                                          const ReconConfig& lcc_cfg, int jobs) {
  const int K = cb.size();
  const std::size_t n = static_cast<std::size_t>(data.rows());
  std::vector<std::vector<Vector>> buckets(K);
  std::vector<Code> codes(n);
  parallel_for(n, jobs, [&](std::size_t r) {
    codes[r] = encode_lcc(data.row(static_cast<int>(r)).transpose(), cb, lcc_cfg);
  });
  for (std::size_t r = 0; r < n; ++r) {
    Vector x = data.row(static_cast<int>(r)).transpose();
    for (int i = 0; i < K; ++i) {
      double si = codes[r].values[i];
      if (si == 0.0) continue;
      buckets[i].push_back(si * (x - cb.centroids.row(i).transpose()));
    }
  }
  std::vector<Matrix> out(K);
  for (int i = 0; i < K; ++i) {
    out[i].resize(buckets[i].size(), cb.dim());
    for (std::size_t r = 0; r < buckets[i].size(); ++r) out[i].row(static_cast<int>(r)) = buckets[i][r];
  }
  return out;
}

SuperVector ltc_from_code(const Code& code, const Vector& x, const Codebook& cb,
                          const LtcProjections& proj, double alpha) {
  const int K = cb.size();
  if (static_cast<int>(proj.basis.size()) != K)
    throw ConfigError("ltc_from_code: projections do not match the codebook");
  if (code.values.size() != K) throw ShapeError("ltc_from_code: code length != K");
  const int C = proj.intrinsic_dim;

  SuperVector sv;
  sv.layout = {K, 1 + C};
  sv.values = Vector::Zero(sv.layout.total());
  sv.encoder_tag = "ltc";
  for (int i = 0; i < K; ++i) {
    double si = code.values[i];
    if (si == 0.0) continue;
    sv.values[i * (1 + C)] = alpha * si;
    Vector residual = si * (x - cb.centroids.row(i).transpose());
    sv.values.segment(i * (1 + C) + 1, C) = proj.basis[i].transpose() * residual;
  }
  return sv;
}

SuperVector encode_ltc(const Vector& x, const Codebook& cb, const LtcProjections& proj,
                       const SuperVectorConfig& cfg, const ReconConfig& lcc_cfg) {
  Code s = encode_lcc(x, cb, lcc_cfg);
  return ltc_from_code(s, x, cb, proj, cfg.alpha_balance);
}

int supervector_dim(const std::string& encoder_tag, int K, int D, int C) {
  if (encoder_tag == "fv") return 2 * K * D;
  if (encoder_tag == "vlad" || encoder_tag == "vlad-k" || encoder_tag == "vlad-all") return K * D;
  if (encoder_tag == "svc" || encoder_tag == "svc-k" || encoder_tag == "svc-all")
    return K * (1 + D);
  if (encoder_tag == "ltc") return K * (1 + C);
  throw ConfigError("supervector_dim: unknown encoder tag '" + encoder_tag + "'");
}

}  // namespace bovw
