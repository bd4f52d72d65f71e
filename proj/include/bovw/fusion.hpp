#pragma once

#include <map>
#include <string>
#include <vector>

#include "bovw/aggregate.hpp"
#include "bovw/encode_video.hpp"

namespace bovw {

enum class FusionLevel { Descriptor, Representation, Score };
enum class ScoreMean { Arithmetic, Geometric };

struct FusionStrategy {
  FusionLevel level = FusionLevel::Representation;
  ScoreMean score_mean = ScoreMean::Geometric;  // only read at score level
  std::vector<std::string> channels;            // declared fusion order
};

/// Hybrid representation: the (encoder x channel) grid whose parts are
/// concatenated at representation level.
struct HybridSpec {
  std::vector<EncoderSpec> encoders;   // default FV + SVC-k
  std::vector<std::string> channels;
};

// Per-cuboid concatenation of aligned channels, in declared order. Channel
// names are only used for error reporting.
Matrix fuse_descriptor_level(const std::vector<Matrix>& channels,
                             const std::vector<std::string>& names);

// Concatenates per-channel representations of one video in the given
// order. Parts keep their own normalization; no re-normalization happens
// here. Duplicate (encoder, channel) parts are rejected.
VideoRepresentation fuse_representation_level(const std::vector<VideoRepresentation>& parts);

// Componentwise arithmetic mean of raw scores, or geometric mean of
// logistic-squashed scores (raw SVM scores can be negative, so the
// geometric mean is taken in sigmoid space).
Vector fuse_score_level(const std::vector<Vector>& score_rows, const FusionStrategy& strategy);

// Encodes every (channel, encoder) pair of the hybrid spec and fuses at
// representation level. raw_channels holds the video's raw (unwhitened)
// descriptors per channel; models the fitted per-channel bundles.
VideoRepresentation build_hybrid(const HybridSpec& spec,
                                 const std::map<std::string, Matrix>& raw_channels,
                                 const std::map<std::string, ChannelModels>& models,
                                 const PoolNormConfig& pool_cfg, const std::string& video_id);

}  // namespace bovw
