#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bovw/code.hpp"

namespace bovw {

enum class Pooling { Sum, Max };
enum class IntraNorm { Off, L1, L2 };
enum class FinalNorm { None, L1, L2 };
enum class NormOrder { PowerThenIntra, IntraThenPower };

struct PoolNormConfig {
  Pooling pooling = Pooling::Sum;
  std::optional<double> power_alpha = 0.5;  // sign(p)|p|^alpha, disabled when absent
  IntraNorm intra = IntraNorm::Off;
  FinalNorm final_norm = FinalNorm::L2;
  NormOrder order = NormOrder::PowerThenIntra;
};

/// Pooled (but not yet normalized) per-video vector; keeps the block
/// layout so intra-normalization can find the codeword blocks.
struct PooledVector {
  Vector values;
  BlockLayout layout;    // block_dim 1 for flat codes
  std::string encoder_tag;
  Pooling pooling = Pooling::Sum;
};

struct Provenance {
  std::string encoder_tag;
  std::string channel;
  std::string pooling;
  std::string normalization;
};

struct VideoRepresentation {
  Vector values;
  Provenance provenance;
  std::string video_id;
};

// Componentwise sum or max over per-descriptor codes. All codes must share
// length and encoder tag. Throws EmptyInputError on an empty sequence.
PooledVector pool(const std::vector<Code>& codes, const PoolNormConfig& cfg);

// Super-vector variant; max pooling is rejected here.
PooledVector pool(const std::vector<SuperVector>& codes, const PoolNormConfig& cfg);

// Applies, in cfg.order: power transform and block-wise intra
// normalization, then the final l1/l2 normalization. Zero vectors and
// zero blocks pass through unchanged at every stage.
VideoRepresentation normalize(const PooledVector& p, const PoolNormConfig& cfg);

// Verifies the power(0.5)+l2 vs l2-of-sqrt-of-l1 identity on p (>= 0,
// nonzero). Library self-test utility; throws DomainError on a negative
// entry.
bool hellinger_check(const Vector& p, double tol = 1e-12);

// Human-readable chain like "power(0.5)+intra-l2+l2", recorded in
// provenance.
std::string describe_normalization(const PoolNormConfig& cfg);

}  // namespace bovw
