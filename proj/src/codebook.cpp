#include "bovw/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bovw/errors.hpp"
#include "bovw/log.hpp"
#include "bovw/parallel.hpp"
#include "bovw/rng.hpp"

namespace bovw {

namespace {

constexpr std::size_t kChunk = 2048;

double squared_dist(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  return (a - b).squaredNorm();
}

// k-means++ seeding (Arthur & Vassilvitskii). The paper only says codewords
// are sampled from training features; ++ seeding keeps runs reproducible
// and well-spread under a fixed seed.
Matrix kmeanspp_seed(const Matrix& data, int K, std::mt19937_64& rng) {
  const int n = static_cast<int>(data.rows());
  Matrix centroids(K, data.cols());
  std::uniform_int_distribution<int> first(0, n - 1);
  centroids.row(0) = data.row(first(rng));
  Vector min_d2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
  for (int k = 1; k < K; ++k) {
    for (int i = 0; i < n; ++i) {
      double d2 = squared_dist(data.row(i).transpose(), centroids.row(k - 1).transpose());
      if (d2 < min_d2[i]) min_d2[i] = d2;
    }
    double total = min_d2.sum();
    if (total <= 0.0) {
      // all remaining points coincide with chosen centroids; fall back to uniform
      centroids.row(k) = data.row(first(rng));
      continue;
    }
    std::uniform_real_distribution<double> unif(0.0, total);
    double target = unif(rng);
    double cum = 0.0;
    int pick = n - 1;
    for (int i = 0; i < n; ++i) {
      cum += min_d2[i];
      if (cum >= target) {
        pick = i;
        break;
      }
    }
    centroids.row(k) = data.row(pick);
  }
  return centroids;
}

}  // namespace

std::vector<int> nearest_centroid(const Matrix& data, const Matrix& centroids, int jobs) {
  const std::size_t n = static_cast<std::size_t>(data.rows());
  const int K = static_cast<int>(centroids.rows());
  std::vector<int> assign(n, 0);
  parallel_chunks(n, kChunk, jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_k = 0;
      for (int k = 0; k < K; ++k) {
        double d2 = squared_dist(data.row(static_cast<int>(i)).transpose(),
                                 centroids.row(k).transpose());
        if (d2 < best) {
          best = d2;
          best_k = k;
        }
      }
      assign[i] = best_k;
    }
  });
  return assign;
}

Codebook kmeans_fit(const Matrix& data, int K, int max_iters, std::uint64_t seed, int jobs) {
  const int n = static_cast<int>(data.rows());
  const int dim = static_cast<int>(data.cols());
  if (K <= 0) throw ConfigError("kmeans_fit: K must be positive");
  if (max_iters <= 0) throw ConfigError("kmeans_fit: max_iters must be positive");
  if (n < K)
    throw InsufficientDataError("kmeans_fit: " + std::to_string(n) + " samples < K = " +
                                std::to_string(K));

  auto rng = make_rng(seed);
  Matrix centroids = kmeanspp_seed(data, K, rng);

  Codebook cb;
  std::vector<int> assign(n, -1);
  std::vector<int> counts(K, 0);
  const std::size_t chunks = chunk_count(n, kChunk);

  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> new_assign = nearest_centroid(data, centroids, jobs);

    // sums merged in chunk order so the reduction is deterministic
    std::vector<Matrix> chunk_sum(chunks, Matrix::Zero(K, dim));
    std::vector<std::vector<int>> chunk_count_(chunks, std::vector<int>(K, 0));
    parallel_chunks(n, kChunk, jobs, [&](std::size_t c, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        int k = new_assign[i];
        chunk_sum[c].row(k) += data.row(static_cast<int>(i));
        chunk_count_[c][k] += 1;
      }
    });
    Matrix sum = Matrix::Zero(K, dim);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t c = 0; c < chunks; ++c) {
      sum += chunk_sum[c];
      for (int k = 0; k < K; ++k) counts[k] += chunk_count_[c][k];
    }

    for (int k = 0; k < K; ++k) {
      if (counts[k] > 0) {
        centroids.row(k) = sum.row(k) / counts[k];
      } else {
        // re-seed to the point farthest from its assigned centroid
        double worst = -1.0;
        int worst_i = 0;
        for (int i = 0; i < n; ++i) {
          double d2 =
              squared_dist(data.row(i).transpose(), centroids.row(new_assign[i]).transpose());
          if (d2 > worst) {
            worst = d2;
            worst_i = i;
          }
        }
        centroids.row(k) = data.row(worst_i);
        new_assign[worst_i] = k;
        counts[k] = 1;
        log_warn("kmeans_fit: empty cluster " + std::to_string(k) + " re-seeded at iteration " +
                 std::to_string(iter));
      }
    }

    // Eq-style objective: distance of every point to its nearest centroid
    std::vector<double> chunk_obj(chunks, 0.0);
    std::vector<int> opt_assign = nearest_centroid(data, centroids, jobs);
    parallel_chunks(n, kChunk, jobs, [&](std::size_t c, std::size_t begin, std::size_t end) {
      double acc = 0.0;
      for (std::size_t i = begin; i < end; ++i)
        acc += squared_dist(data.row(static_cast<int>(i)).transpose(),
                            centroids.row(opt_assign[i]).transpose());
      chunk_obj[c] = acc;
    });
    double objective = 0.0;
    for (double o : chunk_obj) objective += o;
    cb.objective_trace.push_back(objective);

    bool converged = (opt_assign == assign);
    assign = std::move(opt_assign);
    if (converged) break;
  }

  cb.centroids = centroids;
  cb.priors = Vector::Zero(K);
  for (int i = 0; i < n; ++i) cb.priors[assign[i]] += 1.0;
  cb.priors /= static_cast<double>(n);
  return cb;
}

// ---------------------------------------------------------------------------
// GMM
// ---------------------------------------------------------------------------

namespace {

struct GmmLogConstants {
  Matrix inv_var;  // K x D
  Vector log_norm; // log w_k - 0.5 * sum_d log(2 pi var_kd)
};

GmmLogConstants precompute(const GmmModel& g) {
  GmmLogConstants c;
  c.inv_var = g.variances.cwiseInverse();
  const int K = g.size();
  c.log_norm.resize(K);
  const double log2pi = std::log(2.0 * M_PI);
  for (int k = 0; k < K; ++k) {
    double s = 0.0;
    for (int d = 0; d < g.dim(); ++d) s += log2pi + std::log(g.variances(k, d));
    c.log_norm[k] = std::log(g.weights[k]) - 0.5 * s;
  }
  return c;
}

Vector component_log_density_with(const GmmModel& g, const GmmLogConstants& c, const Vector& x) {
  const int K = g.size();
  Vector out(K);
  for (int k = 0; k < K; ++k) {
    double q = ((x.transpose() - g.means.row(k)).array().square() *
                c.inv_var.row(k).array()).sum();
    out[k] = c.log_norm[k] - 0.5 * q;
  }
  return out;
}

double logsumexp(const Vector& v) {
  double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

Vector component_log_density(const GmmModel& g, const Vector& x) {
  if (x.size() != g.dim()) throw ShapeError("component_log_density: dimension mismatch");
  return component_log_density_with(g, precompute(g), x);
}

double log_likelihood(const GmmModel& g, const Vector& x) {
  return logsumexp(component_log_density(g, x));
}

Vector posterior(const GmmModel& g, const Vector& x) {
  if (x.size() != g.dim()) throw ShapeError("posterior: dimension mismatch");
  Vector logp = component_log_density(g, x);
  double m = logp.maxCoeff();
  Vector gamma = (logp.array() - m).exp();
  return gamma / gamma.sum();
}

GmmModel gmm_fit(const Matrix& data, int K, int max_iters, std::uint64_t seed,
                 double variance_floor_rel, int jobs) {
  const int n = static_cast<int>(data.rows());
  const int dim = static_cast<int>(data.cols());
  if (K <= 0) throw ConfigError("gmm_fit: K must be positive");
  if (max_iters <= 0) throw ConfigError("gmm_fit: max_iters must be positive");
  if (n < K)
    throw InsufficientDataError("gmm_fit: " + std::to_string(n) + " samples < K = " +
                                std::to_string(K));

  Vector data_mean = data.colwise().mean();
  Vector data_var =
      ((data.rowwise() - data_mean.transpose()).array().square().colwise().sum() / n).matrix();
  double floor = std::max(variance_floor_rel * data_var.mean(), 1e-12);

  // init from k-means: means = centroids, weights = priors, variances =
  // per-cluster sample variance (floored)
  Codebook init = kmeans_fit(data, K, std::min(max_iters, 25), seed, jobs);
  std::vector<int> assign = nearest_centroid(data, init.centroids, jobs);

  GmmModel g;
  g.variance_floor = floor;
  g.means = init.centroids;
  g.weights = Vector::Constant(K, 1e-12);
  g.variances = Matrix::Zero(K, dim);
  std::vector<int> counts(K, 0);
  for (int i = 0; i < n; ++i) {
    int k = assign[i];
    counts[k] += 1;
    g.variances.row(k) +=
        (data.row(i) - init.centroids.row(k)).array().square().matrix();
  }
  for (int k = 0; k < K; ++k) {
    if (counts[k] > 0) {
      g.weights[k] = static_cast<double>(counts[k]) / n;
      g.variances.row(k) /= static_cast<double>(counts[k]);
    } else {
      g.weights[k] = 1.0 / n;
      g.variances.row(k) = data_var.transpose();
    }
  }
  g.weights /= g.weights.sum();
  g.variances = g.variances.cwiseMax(floor);

  const std::size_t chunks = chunk_count(n, kChunk);
  double prev_ll = -std::numeric_limits<double>::infinity();
  auto reseed_rng = make_rng(derive_seed(seed, 0xE5CABD));

  for (int iter = 0; iter < max_iters; ++iter) {
    GmmLogConstants consts = precompute(g);

    struct Stats {
      Vector nk;
      Matrix sx, sxx;
      double ll = 0.0;
    };
    std::vector<Stats> partial(chunks);
    parallel_chunks(n, kChunk, jobs, [&](std::size_t c, std::size_t begin, std::size_t end) {
      Stats s;
      s.nk = Vector::Zero(K);
      s.sx = Matrix::Zero(K, dim);
      s.sxx = Matrix::Zero(K, dim);
      for (std::size_t i = begin; i < end; ++i) {
        Vector x = data.row(static_cast<int>(i)).transpose();
        Vector logp = component_log_density_with(g, consts, x);
        double lse = logsumexp(logp);
        s.ll += lse;
        Vector gamma = (logp.array() - lse).exp();
        s.nk += gamma;
        s.sx += gamma * x.transpose();
        s.sxx += gamma * x.array().square().matrix().transpose();
      }
      partial[c] = std::move(s);
    });

    Vector nk = Vector::Zero(K);
    Matrix sx = Matrix::Zero(K, dim);
    Matrix sxx = Matrix::Zero(K, dim);
    double ll = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      nk += partial[c].nk;
      sx += partial[c].sx;
      sxx += partial[c].sxx;
      ll += partial[c].ll;
    }
    ll /= n;
    g.loglik_trace.push_back(ll);

    // M-step
    bool reseeded = false;
    for (int k = 0; k < K; ++k) {
      double w = nk[k] / n;
      if (w < 1e-8) {
        // collapsed component: re-seed to a random training point
        std::uniform_int_distribution<int> pick(0, n - 1);
        int i = pick(reseed_rng);
        g.means.row(k) = data.row(i);
        g.variances.row(k) = data_var.transpose().cwiseMax(floor);
        g.weights[k] = 1.0 / n;
        reseeded = true;
        log_warn("gmm_fit: component " + std::to_string(k) + " collapsed, re-seeded at iteration " +
                 std::to_string(iter));
        continue;
      }
      g.weights[k] = w;
      g.means.row(k) = sx.row(k) / nk[k];
      Vector var = (sxx.row(k) / nk[k]).transpose() -
                   g.means.row(k).transpose().array().square().matrix();
      g.variances.row(k) = var.cwiseMax(floor).transpose();
    }
    g.weights /= g.weights.sum();

    if (!reseeded && std::isfinite(prev_ll)) {
      double rel = (ll - prev_ll) / std::max(1.0, std::abs(prev_ll));
      if (rel < 1e-6) break;
    }
    prev_ll = ll;
  }

  return g;
}

}  // namespace bovw
