#pragma once

#include <utility>
#include <vector>

#include "bovw/types.hpp"

namespace bovw {

/// (codeword index, Euclidean distance) sorted by ascending distance,
/// ties by lowest index.
using NeighborList = std::vector<std::pair<int, double>>;

// The k nearest codebook rows to x. k is clamped to the number of rows.
NeighborList k_nearest(const Vector& x, const Matrix& centroids, int k);

// Distances from x to every codebook row, in row order.
Vector all_distances(const Vector& x, const Matrix& centroids);

}  // namespace bovw
