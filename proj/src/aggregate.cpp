#include "bovw/aggregate.hpp"

#include <cmath>
#include <sstream>

#include "bovw/errors.hpp"

namespace bovw {

namespace {

void check_same_shape(Eigen::Index expected, Eigen::Index got, const std::string& tag_a,
                      const std::string& tag_b) {
  if (expected != got)
    throw ShapeError("pool: mixed code lengths (" + std::to_string(expected) + " vs " +
                     std::to_string(got) + ")");
  if (tag_a != tag_b)
    throw ConfigError("pool: mixed encoder tags ('" + tag_a + "' vs '" + tag_b + "')");
}

Vector pool_values(const std::vector<const Vector*>& rows, Pooling pooling) {
  Vector out = *rows[0];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (pooling == Pooling::Sum)
      out += *rows[i];
    else
      out = out.cwiseMax(*rows[i]);
  }
  return out;
}

void power_transform(Vector& v, double alpha) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = (v[i] >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(v[i]), alpha);
}

void intra_normalize(Vector& v, const BlockLayout& layout, IntraNorm mode) {
  if (mode == IntraNorm::Off) return;
  for (int b = 0; b < layout.blocks; ++b) {
    auto block = v.segment(b * layout.block_dim, layout.block_dim);
    double norm = (mode == IntraNorm::L1) ? block.lpNorm<1>() : block.norm();
    if (norm > 0.0) block /= norm;  // zero blocks stay zero
  }
}

void final_normalize(Vector& v, FinalNorm mode) {
  if (mode == FinalNorm::None) return;
  double norm = (mode == FinalNorm::L1) ? v.lpNorm<1>() : v.norm();
  if (norm > 0.0) v /= norm;
}

}  // namespace

PooledVector pool(const std::vector<Code>& codes, const PoolNormConfig& cfg) {
  if (codes.empty()) throw EmptyInputError("pool: no codes for this video");
  std::vector<const Vector*> rows;
  rows.reserve(codes.size());
  for (const Code& c : codes) {
    check_same_shape(codes[0].values.size(), c.values.size(), codes[0].encoder_tag,
                     c.encoder_tag);
    rows.push_back(&c.values);
  }
  PooledVector p;
  p.values = pool_values(rows, cfg.pooling);
  p.layout = {static_cast<int>(codes[0].values.size()), 1};
  p.encoder_tag = codes[0].encoder_tag;
  p.pooling = cfg.pooling;
  return p;
}

PooledVector pool(const std::vector<SuperVector>& codes, const PoolNormConfig& cfg) {
  if (codes.empty()) throw EmptyInputError("pool: no codes for this video");
  if (cfg.pooling == Pooling::Max)
    throw ConfigError("pool: max pooling is not defined for super-vector encoders");
  std::vector<const Vector*> rows;
  rows.reserve(codes.size());
  for (const SuperVector& c : codes) {
    check_same_shape(codes[0].values.size(), c.values.size(), codes[0].encoder_tag,
                     c.encoder_tag);
    rows.push_back(&c.values);
  }
  PooledVector p;
  p.values = pool_values(rows, cfg.pooling);
  p.layout = codes[0].layout;
  p.encoder_tag = codes[0].encoder_tag;
  p.pooling = cfg.pooling;
  return p;
}

VideoRepresentation normalize(const PooledVector& p, const PoolNormConfig& cfg) {
  if (!p.values.allFinite()) throw DomainError("normalize: non-finite pooled input");
  Vector v = p.values;
  if (cfg.order == NormOrder::PowerThenIntra) {
    if (cfg.power_alpha) power_transform(v, *cfg.power_alpha);
    intra_normalize(v, p.layout, cfg.intra);
  } else {
    intra_normalize(v, p.layout, cfg.intra);
    if (cfg.power_alpha) power_transform(v, *cfg.power_alpha);
  }
  final_normalize(v, cfg.final_norm);

  VideoRepresentation rep;
  rep.values = std::move(v);
  rep.provenance.encoder_tag = p.encoder_tag;
  rep.provenance.pooling = (p.pooling == Pooling::Sum) ? "sum" : "max";
  rep.provenance.normalization = describe_normalization(cfg);
  return rep;
}

bool hellinger_check(const Vector& p, double tol) {
  if ((p.array() < 0.0).any()) throw DomainError("hellinger_check: negative entry");
  double l1 = p.lpNorm<1>();
  if (l1 == 0.0) throw DomainError("hellinger_check: zero vector");
  Vector sqrt_p = p.array().sqrt();
  Vector lhs = sqrt_p / sqrt_p.norm();
  Vector rhs = (p / l1).array().sqrt();
  return (lhs - rhs).cwiseAbs().maxCoeff() <= tol;
}

std::string describe_normalization(const PoolNormConfig& cfg) {
  std::ostringstream out;
  const char* sep = "";
  auto emit_power = [&]() {
    if (cfg.power_alpha) {
      out << sep << "power(" << *cfg.power_alpha << ")";
      sep = "+";
    }
  };
  auto emit_intra = [&]() {
    if (cfg.intra != IntraNorm::Off) {
      out << sep << (cfg.intra == IntraNorm::L1 ? "intra-l1" : "intra-l2");
      sep = "+";
    }
  };
  if (cfg.order == NormOrder::PowerThenIntra) {
    emit_power();
    emit_intra();
  } else {
    emit_intra();
    emit_power();
  }
  if (cfg.final_norm != FinalNorm::None) {
    out << sep << (cfg.final_norm == FinalNorm::L1 ? "l1" : "l2");
    sep = "+";
  }
  if (out.str().empty()) return "none";
  return out.str();
}

}  // namespace bovw
