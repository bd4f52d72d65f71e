#pragma once

#include <string>

#include "bovw/types.hpp"

namespace bovw {

/// Per-descriptor code for voting and reconstruction encoders: a length-K
/// vector, usually sparse (nnz tracks the stored support size).
struct Code {
  Vector values;
  int nnz = 0;
  std::string encoder_tag;
};

struct BlockLayout {
  int blocks = 0;     // K
  int block_dim = 0;  // per-encoder: FV 2D, VLAD D, SVC 1+D, LTC 1+C

  int total() const { return blocks * block_dim; }
};

/// Per-descriptor output of the super-vector encoders: K blocks of
/// block_dim entries laid out contiguously.
struct SuperVector {
  Vector values;
  BlockLayout layout;
  std::string encoder_tag;
};

}  // namespace bovw
