#include "bovw/datagen.hpp"

#include <cmath>
#include <random>
#include <string>

#include "bovw/errors.hpp"
#include "bovw/parallel.hpp"
#include "bovw/rng.hpp"

namespace bovw {

void validate_spec(const SyntheticSpec& spec) {
  if (spec.num_classes < 1) throw ConfigError("synthetic spec: num_classes must be >= 1");
  if (spec.channels.empty()) throw ConfigError("synthetic spec: no channels");
  if (spec.min_descriptors < 1 || spec.max_descriptors < spec.min_descriptors)
    throw ConfigError("synthetic spec: bad descriptor count range");
  if (spec.train_videos_per_class < 0 || spec.test_videos_per_class < 0 ||
      spec.train_videos_per_class + spec.test_videos_per_class == 0)
    throw ConfigError("synthetic spec: no videos requested");
  for (const ChannelSpec& ch : spec.channels) {
    if (ch.dim < 1) throw ConfigError("synthetic spec: channel '" + ch.name + "' has dim < 1");
    if (static_cast<int>(ch.per_class.size()) != spec.num_classes)
      throw ConfigError("synthetic spec: channel '" + ch.name +
                        "' does not define a mixture for every class");
    for (const ClassMixture& mix : ch.per_class) {
      if (mix.components.empty())
        throw ConfigError("synthetic spec: empty mixture in channel '" + ch.name + "'");
      double total = 0.0;
      for (const MixtureComponent& comp : mix.components) {
        if (comp.mean.size() != ch.dim || comp.variance.size() != ch.dim)
          throw ConfigError("synthetic spec: component dim mismatch in channel '" + ch.name +
                            "'");
        if ((comp.variance.array() <= 0.0).any())
          throw ConfigError("synthetic spec: non-positive variance in channel '" + ch.name +
                            "'");
        if (comp.weight < 0.0)
          throw ConfigError("synthetic spec: negative mixture weight in channel '" + ch.name +
                            "'");
        total += comp.weight;
      }
      if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError("synthetic spec: mixture weights must sum to 1 in channel '" +
                          ch.name + "'");
    }
  }
}

namespace {

Matrix sample_mixture(const ClassMixture& mix, int count, int dim, std::mt19937_64& rng) {
  std::vector<double> cumulative;
  cumulative.reserve(mix.components.size());
  double acc = 0.0;
  for (const MixtureComponent& comp : mix.components) {
    acc += comp.weight;
    cumulative.push_back(acc);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(count, dim);
  for (int r = 0; r < count; ++r) {
    double u = unif(rng) * acc;
    std::size_t c = 0;
    while (c + 1 < cumulative.size() && u > cumulative[c]) ++c;
    const MixtureComponent& comp = mix.components[c];
    for (int d = 0; d < dim; ++d)
      out(r, d) = comp.mean[d] + std::sqrt(comp.variance[d]) * normal(rng);
  }
  return out;
}

}  // namespace

SyntheticDataset generate(const SyntheticSpec& spec, int jobs) {
  validate_spec(spec);

  SyntheticDataset ds;
  ds.spec = spec;

  // fixed enumeration order: split, then class, then index
  struct Slot {
    std::string split;
    int label;
    int index;
  };
  std::vector<Slot> slots;
  for (const char* split : {"train", "test"}) {
    int per_class = (std::string(split) == "train") ? spec.train_videos_per_class
                                                    : spec.test_videos_per_class;
    for (int c = 0; c < spec.num_classes; ++c)
      for (int v = 0; v < per_class; ++v) slots.push_back({split, c, v});
  }

  ds.videos.resize(slots.size());
  parallel_for(slots.size(), jobs, [&](std::size_t g) {
    const Slot& slot = slots[g];
    VideoSample& video = ds.videos[g];
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_c%d_v%03d", slot.split.c_str(), slot.label, slot.index);
    video.video_id = buf;
    video.label = slot.label;
    video.split = slot.split;

    auto count_rng = make_rng(derive_seed(spec.seed, g, 0xC0DE));
    std::uniform_int_distribution<int> count_dist(spec.min_descriptors, spec.max_descriptors);
    int n = count_dist(count_rng);

    for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
      const ChannelSpec& channel = spec.channels[ch];
      auto rng = make_rng(derive_seed(spec.seed, g, 0xDA7A + ch));
      video.channels[channel.name] =
          sample_mixture(channel.per_class[slot.label], n, channel.dim, rng);
    }
  });
  return ds;
}

SyntheticSpec standard_benchmark() {
  // Channel A separates classes {0,1,2} and collapses {3,4} onto one
  // mixture; channel B mirrors that. Class identity within the separated
  // group rides on a small mean offset plus a bimodal spread along a
  // class-specific axis, so aggregate statistics matter more than raw
  // histogram counts.
  constexpr int kDim = 24;
  constexpr double kGroupShift = 3.0;   // separates the group halves
  constexpr double kClassShift = 1.0;   // within-group class offset
  constexpr double kModeOffset = 1.5;   // bimodal component spread
  constexpr double kVariance = 1.0;

  auto component = [&](const std::vector<std::pair<int, double>>& coords, double weight) {
    MixtureComponent comp;
    comp.mean = Vector::Zero(kDim);
    for (auto [axis, value] : coords) comp.mean[axis] += value;
    comp.variance = Vector::Constant(kDim, kVariance);
    comp.weight = weight;
    return comp;
  };

  // classes {first..first+2} distinguishable, remaining two share a mixture
  auto make_channel = [&](const std::string& name, bool separate_first_group) {
    ChannelSpec ch;
    ch.name = name;
    ch.dim = kDim;
    ch.per_class.resize(5);
    ClassMixture shared;
    shared.components = {
        component({{0, -kGroupShift}, {5, kModeOffset}}, 0.5),
        component({{0, -kGroupShift}, {5, -kModeOffset}}, 0.5),
    };
    for (int cls = 0; cls < 5; ++cls) {
      bool in_group = separate_first_group ? (cls < 3) : (cls >= 3);
      if (!in_group) {
        ch.per_class[cls] = shared;
        continue;
      }
      int g = separate_first_group ? cls : cls - 3;
      ClassMixture mix;
      mix.components = {
          component({{0, kGroupShift}, {1 + g, kClassShift}, {7 + g, kModeOffset}}, 0.5),
          component({{0, kGroupShift}, {1 + g, kClassShift}, {7 + g, -kModeOffset}}, 0.5),
      };
      ch.per_class[cls] = mix;
    }
    return ch;
  };

  SyntheticSpec spec;
  spec.num_classes = 5;
  spec.channels = {make_channel("chanA", true), make_channel("chanB", false)};
  spec.min_descriptors = 200;
  spec.max_descriptors = 400;
  spec.train_videos_per_class = 100;
  spec.test_videos_per_class = 50;
  spec.seed = 1337;
  return spec;
}

}  // namespace bovw
