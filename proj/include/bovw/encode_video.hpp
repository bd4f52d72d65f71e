#pragma once

#include <optional>
#include <string>

#include "bovw/aggregate.hpp"
#include "bovw/codebook.hpp"
#include "bovw/encoders_reconstruction.hpp"
#include "bovw/encoders_supervector.hpp"
#include "bovw/encoders_voting.hpp"
#include "bovw/whiten.hpp"

namespace bovw {

/// An encoder selection by tag plus the per-family parameters it reads.
/// Tags: vq, sa, sa-k, sc, gsc, omp, spc, lcc, llc, fv, vlad, vlad-k,
/// vlad-all, svc, svc-k, svc-all, ltc.
struct EncoderSpec {
  std::string name = "fv";
  VotingConfig voting;
  ReconConfig recon;
  SuperVectorConfig sv;
};

/// Everything fitted for one descriptor channel.
struct ChannelModels {
  WhitenTransform whiten;
  std::optional<Codebook> codebook;
  std::optional<GmmModel> gmm;
  std::optional<LtcProjections> ltc;
};

bool known_encoder(const std::string& name);
bool encoder_needs_gmm(const std::string& name);
bool encoder_is_supervector(const std::string& name);

// Output length of the pooled representation for this encoder given the
// fitted models (Table-style Dim contract).
int representation_dim(const EncoderSpec& spec, const ChannelModels& models);

// Encode every (whitened) descriptor of one video, pool and normalize.
// Raw descriptors are whitened with models.whiten first. A video with zero
// descriptors yields a zero representation and a logged warning.
VideoRepresentation encode_video(const Matrix& raw_descriptors, const EncoderSpec& spec,
                                 const ChannelModels& models, const PoolNormConfig& pool_cfg,
                                 const std::string& video_id, const std::string& channel);

}  // namespace bovw
