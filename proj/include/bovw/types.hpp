#pragma once

#include <Eigen/Core>

namespace bovw {

// Descriptors are stored one per row; all numeric work is done in double.
// File payloads are 32-bit little-endian floats (see io.hpp).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace bovw
