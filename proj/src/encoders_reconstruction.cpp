#include "bovw/encoders_reconstruction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bovw/errors.hpp"
#include "bovw/neighbors.hpp"

namespace bovw {

namespace {

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

int count_nonzeros(const Vector& s) {
  int nnz = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] != 0.0) ++nnz;
  return nnz;
}

}  // namespace

double spc_objective(const Vector& x, const Matrix& centroids, const Vector& s, double lambda) {
  return (x - centroids.transpose() * s).squaredNorm() + lambda * s.lpNorm<1>();
}

double lcc_objective(const Vector& x, const Matrix& centroids, const Vector& s, double lambda) {
  Vector dist = all_distances(x, centroids);
  return (x - centroids.transpose() * s).squaredNorm() +
         lambda * (dist.array() * s.array().abs()).sum();
}

Code encode_omp(const Vector& x, const Codebook& cb, const ReconConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("encode_omp: k must be >= 1");
  const int K = cb.size();
  const int budget = std::min(cfg.k, K);

  Vector atom_norms(K);
  for (int j = 0; j < K; ++j)
    atom_norms[j] = std::max(cb.centroids.row(j).norm(), 1e-300);

  Vector residual = x;
  std::vector<int> active;
  std::vector<bool> in_active(K, false);
  Vector coeffs;

  while (static_cast<int>(active.size()) < budget) {
    // select by normalized correlation with the residual
    double best = -1.0;
    int best_j = -1;
    for (int j = 0; j < K; ++j) {
      if (in_active[j]) continue;
      double corr = std::abs(cb.centroids.row(j).dot(residual)) / atom_norms[j];
      if (corr > best) {
        best = corr;
        best_j = j;
      }
    }
    if (best_j < 0 || best <= 1e-14) break;

    active.push_back(best_j);
    in_active[best_j] = true;

    Matrix atoms(x.size(), active.size());
    for (std::size_t a = 0; a < active.size(); ++a)
      atoms.col(static_cast<int>(a)) = cb.centroids.row(active[a]).transpose();

    Eigen::ColPivHouseholderQR<Matrix> qr(atoms);
    if (qr.rank() < static_cast<Eigen::Index>(active.size())) {
      // rank-deficient active set: drop the new atom and stop
      in_active[active.back()] = false;
      active.pop_back();
      break;
    }
    coeffs = qr.solve(x);
    residual = x - atoms * coeffs;
    if (residual.norm() < cfg.solver_tol) break;
  }

  Code c;
  c.values = Vector::Zero(K);
  for (std::size_t a = 0; a < active.size(); ++a) c.values[active[a]] = coeffs[static_cast<int>(a)];
  c.nnz = static_cast<int>(active.size());
  c.encoder_tag = "omp";
  return c;
}

// ---------------------------------------------------------------------------
// SPC: ISTA with backtracking
// ---------------------------------------------------------------------------

Code encode_spc(const Vector& x, const Codebook& cb, const ReconConfig& cfg, SolveInfo* info) {
  if (cfg.lambda <= 0.0) throw ConfigError("encode_spc: lambda must be positive");
  const int K = cb.size();
  const Matrix D = cb.centroids.transpose();  // dim x K

  Vector s = Vector::Zero(K);
  double f = spc_objective(x, cb.centroids, s, cfg.lambda);
  double step = 1.0 / std::max(1e-12, 2.0 * cb.centroids.rowwise().squaredNorm().maxCoeff() * K);
  // crude lower bound on 1/L; backtracking expands it upward as allowed
  step = std::max(step, 1e-6);

  bool converged = false;
  int iter = 0;
  for (; iter < cfg.max_solver_iters; ++iter) {
    Vector grad = 2.0 * (D.transpose() * (D * s - x));
    double g = (x - D * s).squaredNorm();

    // backtracking on the smooth part
    double t = step * 2.0;
    Vector cand;
    double g_cand;
    while (true) {
      cand = s - t * grad;
      for (int i = 0; i < K; ++i) cand[i] = soft_threshold(cand[i], t * cfg.lambda);
      Vector diff = cand - s;
      g_cand = (x - D * cand).squaredNorm();
      if (g_cand <= g + grad.dot(diff) + diff.squaredNorm() / (2.0 * t) + 1e-15) break;
      t *= 0.5;
      if (t < 1e-18) break;
    }
    step = t;

    double f_cand = g_cand + cfg.lambda * cand.lpNorm<1>();
    if (f_cand > f) break;  // numerically stalled; keep the better iterate
    double rel = (f - f_cand) / std::max(1.0, std::abs(f));
    s = cand;
    f = f_cand;
    if (rel < cfg.solver_tol) {
      converged = true;
      ++iter;
      break;
    }
  }

  if (info) {
    info->converged = converged;
    info->iters = iter;
    info->objective = f;
  }
  Code c;
  c.values = s;
  c.nnz = count_nonzeros(s);
  c.encoder_tag = "spc";
  return c;
}

// ---------------------------------------------------------------------------
// LCC: proximal gradient with the prox taken on the sum-to-one hyperplane
// ---------------------------------------------------------------------------

namespace {

// argmin_z 0.5||z - v||^2 + sum_k w_k |z_k|  s.t.  1^T z = 1.
// z_k(nu) = soft(v_k - nu, w_k); sum_k z_k(nu) is continuous and
// non-increasing in nu, so the multiplier is found by bisection.
Vector prox_weighted_l1_simplex_affine(const Vector& v, const Vector& w) {
  const int K = static_cast<int>(v.size());
  auto shifted_sum = [&](double nu) {
    double total = 0.0;
    for (int k = 0; k < K; ++k) total += soft_threshold(v[k] - nu, w[k]);
    return total;
  };
  double lo = -(v.cwiseAbs().maxCoeff() + w.maxCoeff() + 1.0);
  double hi = -lo;
  while (shifted_sum(lo) < 1.0) lo = 2.0 * lo - 1.0;
  while (shifted_sum(hi) > 1.0) hi = 2.0 * hi + 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (shifted_sum(mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * (1.0 + std::abs(lo))) break;
  }
  double nu = 0.5 * (lo + hi);
  Vector z(K);
  for (int k = 0; k < K; ++k) z[k] = soft_threshold(v[k] - nu, w[k]);
  // exact feasibility: spread the residual over the active coordinates
  double gap = 1.0 - z.sum();
  int active = 0;
  for (int k = 0; k < K; ++k)
    if (z[k] != 0.0) ++active;
  if (active > 0) {
    for (int k = 0; k < K; ++k)
      if (z[k] != 0.0) z[k] += gap / active;
  } else {
    z[0] = 1.0;
  }
  return z;
}

}  // namespace

Code encode_lcc(const Vector& x, const Codebook& cb, const ReconConfig& cfg, SolveInfo* info) {
  if (cfg.lambda <= 0.0) throw ConfigError("encode_lcc: lambda must be positive");
  const int K = cb.size();
  const Matrix D = cb.centroids.transpose();
  Vector dist = all_distances(x, cb.centroids);

  Vector s = Vector::Constant(K, 1.0 / K);
  auto objective = [&](const Vector& z) {
    return (x - D * z).squaredNorm() + cfg.lambda * (dist.array() * z.array().abs()).sum();
  };
  double f = objective(s);
  double step = 1.0 / std::max(1e-12, 2.0 * cb.centroids.rowwise().squaredNorm().maxCoeff() * K);
  step = std::max(step, 1e-6);

  bool converged = false;
  int iter = 0;
  for (; iter < cfg.max_solver_iters; ++iter) {
    Vector grad = 2.0 * (D.transpose() * (D * s - x));
    double g = (x - D * s).squaredNorm();

    double t = step * 2.0;
    Vector cand;
    double g_cand;
    while (true) {
      Vector w = (t * cfg.lambda) * dist;
      cand = prox_weighted_l1_simplex_affine(s - t * grad, w);
      Vector diff = cand - s;
      g_cand = (x - D * cand).squaredNorm();
      if (g_cand <= g + grad.dot(diff) + diff.squaredNorm() / (2.0 * t) + 1e-15) break;
      t *= 0.5;
      if (t < 1e-18) break;
    }
    step = t;

    double f_cand = g_cand + cfg.lambda * (dist.array() * cand.array().abs()).sum();
    if (f_cand > f) break;  // numerically stalled; keep the better iterate
    double rel = (f - f_cand) / std::max(1.0, std::abs(f));
    s = cand;
    f = f_cand;
    if (rel < cfg.solver_tol) {
      converged = true;
      ++iter;
      break;
    }
  }

  if (info) {
    info->converged = converged;
    info->iters = iter;
    info->objective = f;
  }
  Code c;
  c.values = s;
  c.nnz = count_nonzeros(s);
  c.encoder_tag = "lcc";
  return c;
}

// ---------------------------------------------------------------------------
// LLC
// ---------------------------------------------------------------------------

Code encode_llc(const Vector& x, const Codebook& cb, const ReconConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("encode_llc: k must be >= 1");
  const int K = cb.size();
  const int k = std::min(cfg.k, K);
  NeighborList nn = k_nearest(x, cb.centroids, k);

  Code c;
  c.values = Vector::Zero(K);
  c.encoder_tag = "llc";

  // shifted local covariance: C_ij = (d_i - x) . (d_j - x)
  Matrix shifted(k, x.size());
  for (int a = 0; a < k; ++a)
    shifted.row(a) = cb.centroids.row(nn[a].first) - x.transpose();
  Matrix C = shifted * shifted.transpose();
  double tr = C.trace();
  if (tr <= 1e-300) {
    // every neighbor coincides with x; reconstruction is exact either way
    c.values[nn[0].first] = 1.0;
    c.nnz = 1;
    return c;
  }
  C.diagonal().array() += cfg.ridge * tr;
  Vector w = Eigen::LDLT<Matrix>(C).solve(Vector::Ones(k));
  w /= w.sum();
  for (int a = 0; a < k; ++a) c.values[nn[a].first] = w[a];
  c.nnz = count_nonzeros(c.values);
  return c;
}

Code encode_llc_exact(const Vector& x, const Codebook& cb, const ReconConfig& cfg) {
  if (cfg.sigma <= 0.0) throw ConfigError("encode_llc_exact: sigma must be positive");
  const int K = cb.size();
  const Matrix D = cb.centroids.transpose();
  Vector dist = all_distances(x, cb.centroids);
  Vector adaptor = (dist / cfg.sigma).array().exp();

  // KKT system of  min ||x - Ds||^2 + lambda ||e ⊙ s||^2  s.t. 1^T s = 1
  Matrix kkt = Matrix::Zero(K + 1, K + 1);
  kkt.topLeftCorner(K, K) = 2.0 * (D.transpose() * D);
  kkt.topLeftCorner(K, K).diagonal() += 2.0 * cfg.lambda * adaptor.array().square().matrix();
  kkt.topRightCorner(K, 1).setOnes();
  kkt.bottomLeftCorner(1, K).setOnes();
  Vector rhs = Vector::Zero(K + 1);
  rhs.head(K) = 2.0 * (D.transpose() * x);
  rhs[K] = 1.0;
  Vector sol = Eigen::PartialPivLU<Matrix>(kkt).solve(rhs);

  Code c;
  c.values = sol.head(K);
  c.nnz = count_nonzeros(c.values);
  c.encoder_tag = "llc-exact";
  return c;
}

}  // namespace bovw
