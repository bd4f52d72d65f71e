#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bovw/types.hpp"

namespace bovw {

struct MixtureComponent {
  Vector mean;
  Vector variance;  // diagonal, > 0
  double weight = 1.0;
};

struct ClassMixture {
  std::vector<MixtureComponent> components;  // weights sum to 1
};

struct ChannelSpec {
  std::string name;
  int dim = 0;
  std::vector<ClassMixture> per_class;  // one mixture per class
};

struct SyntheticSpec {
  int num_classes = 0;
  std::vector<ChannelSpec> channels;
  int min_descriptors = 0;  // per-video count range, inclusive
  int max_descriptors = 0;
  int train_videos_per_class = 0;
  int test_videos_per_class = 0;
  std::uint64_t seed = 0;
};

struct VideoSample {
  std::string video_id;
  int label = 0;
  std::string split;  // "train" or "test"
  std::map<std::string, Matrix> channels;  // cuboid-aligned row counts
};

struct SyntheticDataset {
  SyntheticSpec spec;
  std::vector<VideoSample> videos;
};

// Validates the spec (mixture weights sum to 1, variances > 0, consistent
// dims) and throws ConfigError otherwise.
void validate_spec(const SyntheticSpec& spec);

// Deterministic under spec.seed for any jobs value: every video draws from
// a sub-seed derived from (seed, video index, channel index), so parallel
// generation cannot reorder samples.
SyntheticDataset generate(const SyntheticSpec& spec, int jobs = 1);

// The canonical 5-class, 2-channel benchmark: channel A separates classes
// {0,1,2} and collapses {3,4}; channel B mirrors that. 100 train and 50
// test videos per class, 200-400 descriptors per video, 24 dims per
// channel. Fusion gains on this set come from channel complementarity by
// construction.
SyntheticSpec standard_benchmark();

}  // namespace bovw
