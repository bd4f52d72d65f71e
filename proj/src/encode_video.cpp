#include "bovw/encode_video.hpp"

#include <array>
#include <algorithm>

#include "bovw/errors.hpp"
#include "bovw/log.hpp"

namespace bovw {

namespace {

constexpr std::array<const char*, 17> kEncoders = {
    "vq",  "sa",   "sa-k",   "sc",  "gsc",   "omp",   "spc",     "lcc", "llc",
    "fv",  "vlad", "vlad-k", "vlad-all", "svc", "svc-k", "svc-all", "ltc"};

SuperVectorConfig with_assignment(SuperVectorConfig cfg, const std::string& name) {
  if (name == "vlad" || name == "svc")
    cfg.assignment = Assignment::Hard;
  else if (name == "vlad-k" || name == "svc-k")
    cfg.assignment = Assignment::SoftK;
  else if (name == "vlad-all" || name == "svc-all")
    cfg.assignment = Assignment::SoftAll;
  return cfg;
}

}  // namespace

bool known_encoder(const std::string& name) {
  return std::find(kEncoders.begin(), kEncoders.end(), name) != kEncoders.end();
}

bool encoder_needs_gmm(const std::string& name) { return name == "fv"; }

bool encoder_is_supervector(const std::string& name) {
  return name == "fv" || name.rfind("vlad", 0) == 0 || name.rfind("svc", 0) == 0 ||
         name == "ltc";
}

int representation_dim(const EncoderSpec& spec, const ChannelModels& models) {
  if (!known_encoder(spec.name)) throw ConfigError("unknown encoder '" + spec.name + "'");
  if (spec.name == "fv") {
    if (!models.gmm) throw ConfigError("encoder 'fv' requires a fitted GMM");
    return supervector_dim("fv", models.gmm->size(), models.gmm->dim());
  }
  if (!models.codebook) throw ConfigError("encoder '" + spec.name + "' requires a codebook");
  const int K = models.codebook->size();
  const int D = models.codebook->dim();
  if (spec.name == "ltc") {
    if (!models.ltc) throw ConfigError("encoder 'ltc' requires fitted tangent projections");
    return supervector_dim("ltc", K, D, models.ltc->intrinsic_dim);
  }
  if (encoder_is_supervector(spec.name)) return supervector_dim(spec.name, K, D);
  return K;
}

VideoRepresentation encode_video(const Matrix& raw_descriptors, const EncoderSpec& spec,
                                 const ChannelModels& models, const PoolNormConfig& pool_cfg,
                                 const std::string& video_id, const std::string& channel) {
  const int dim = representation_dim(spec, models);

  if (raw_descriptors.rows() == 0) {
    log_warn("encode_video: video '" + video_id + "' channel '" + channel +
             "' has no descriptors; emitting a zero representation");
    VideoRepresentation rep;
    rep.values = Vector::Zero(dim);
    rep.video_id = video_id;
    rep.provenance = {spec.name, channel, pool_cfg.pooling == Pooling::Sum ? "sum" : "max",
                      describe_normalization(pool_cfg)};
    return rep;
  }

  Matrix X = apply_whiten(models.whiten, raw_descriptors);
  const int n = static_cast<int>(X.rows());

  VideoRepresentation rep;
  if (encoder_is_supervector(spec.name)) {
    SuperVectorConfig sv_cfg = with_assignment(spec.sv, spec.name);
    std::vector<SuperVector> codes;
    codes.reserve(n);
    for (int r = 0; r < n; ++r) {
      Vector x = X.row(r).transpose();
      if (spec.name == "fv")
        codes.push_back(encode_fv(x, *models.gmm));
      else if (spec.name.rfind("vlad", 0) == 0)
        codes.push_back(encode_vlad(x, *models.codebook, sv_cfg));
      else if (spec.name.rfind("svc", 0) == 0)
        codes.push_back(encode_svc(x, *models.codebook, sv_cfg, n));
      else
        codes.push_back(encode_ltc(x, *models.codebook, *models.ltc, sv_cfg, spec.recon));
    }
    rep = normalize(pool(codes, pool_cfg), pool_cfg);
  } else {
    std::vector<Code> codes;
    codes.reserve(n);
    for (int r = 0; r < n; ++r) {
      Vector x = X.row(r).transpose();
      if (spec.name == "vq")
        codes.push_back(encode_vq(x, *models.codebook));
      else if (spec.name == "sa")
        codes.push_back(encode_sa(x, *models.codebook, spec.voting, false));
      else if (spec.name == "sa-k")
        codes.push_back(encode_sa(x, *models.codebook, spec.voting, true));
      else if (spec.name == "sc")
        codes.push_back(encode_sc(x, *models.codebook, spec.voting));
      else if (spec.name == "gsc")
        codes.push_back(encode_gsc(x, *models.codebook, spec.voting));
      else if (spec.name == "omp")
        codes.push_back(encode_omp(x, *models.codebook, spec.recon));
      else if (spec.name == "spc")
        codes.push_back(encode_spc(x, *models.codebook, spec.recon));
      else if (spec.name == "lcc")
        codes.push_back(encode_lcc(x, *models.codebook, spec.recon));
      else
        codes.push_back(encode_llc(x, *models.codebook, spec.recon));
    }
    rep = normalize(pool(codes, pool_cfg), pool_cfg);
  }

  rep.video_id = video_id;
  rep.provenance.channel = channel;
  return rep;
}

}  // namespace bovw
