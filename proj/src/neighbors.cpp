#include "bovw/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include "bovw/errors.hpp"

namespace bovw {

Vector all_distances(const Vector& x, const Matrix& centroids) {
  if (x.size() != centroids.cols()) throw ShapeError("all_distances: dimension mismatch");
  const int K = static_cast<int>(centroids.rows());
  Vector d(K);
  for (int k = 0; k < K; ++k)
    d[k] = std::sqrt((x.transpose() - centroids.row(k)).squaredNorm());
  return d;
}

NeighborList k_nearest(const Vector& x, const Matrix& centroids, int k) {
  Vector d = all_distances(x, centroids);
  const int K = static_cast<int>(d.size());
  k = std::min(k, K);
  NeighborList order(K);
  for (int i = 0; i < K; ++i) order[i] = {i, d[i]};
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second < b.second;
                      return a.first < b.first;
                    });
  order.resize(k);
  return order;
}

}  // namespace bovw
