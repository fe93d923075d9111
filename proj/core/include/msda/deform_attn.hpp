// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "msda/config.hpp"
#include "msda/nn.hpp"
#include "msda/pyramid.hpp"
#include "msda/sampling.hpp"
#include "msda/tensor.hpp"

namespace msda {

// Projection output layouts are level-major within each head:
//   offset_proj output index = ((h * sumK + level_start[l] + k) * 2 + c), c: 0=x, 1=y
//   attn_proj   output index =  (h * sumK + level_start[l] + k)
// so a single-level config occupies one contiguous block per head.

struct DeformAttnParams {
  Linear value_proj;   // D -> D
  Linear offset_proj;  // D -> 2*heads*sumK
  Linear attn_proj;    // D -> heads*sumK
  Linear output_proj;  // D -> D
  bool offsets_frozen = false;
};

/// Deterministic init. offset_proj: zero weights, bias on unit-circle
/// directions (head h at angle 2*pi*h/heads) scaled by point rank 1..K_l
/// within each level. attn_proj: all zero (uniform attention after softmax).
/// value/output projections: symmetric uniform fan-in (see Linear).
DeformAttnParams init_params(const DeformAttnConfig& cfg, uint64_t seed);

/// loc[l](b,q,h,k) = reference_point(b,q) + offset_{h,l,k}(b,q) / (W_l, H_l),
/// offsets in level-l pixel units from offset_proj on the query embedding.
std::vector<Tensor> compute_sampling_locations(
    const Tensor& queries, const Tensor& reference_points, const DeformAttnParams& params,
    const DeformAttnConfig& cfg, const std::vector<std::array<int64_t, 2>>& spatial_shapes);

struct AttnIntermediates {
  std::vector<Tensor> sampling_locations;  // per level (B, Nq, heads, K_l, 2)
  Tensor attention_weights;                // (B, Nq, heads, sumK), post-softmax
  std::vector<Tensor> samples;             // per level (B, Nq, heads, K_l, C_h)

  // forward caches consumed by msda_backward
  Tensor flat_values;                // (B, S, C) pre-projection
  std::vector<Tensor> value_maps;    // per level (B, heads, C_h, H_l, W_l), post-projection
  Tensor head_concat;                // (B, Nq, D) pre output_proj
  std::vector<std::array<int64_t, 2>> spatial_shapes;
  std::vector<int64_t> level_start_index;
  SamplingMode mode = SamplingMode::bilinear;
};

struct MsdaResult {
  Tensor output;  // (B, Nq, D)
  AttnIntermediates cache;
};

/// Multi-scale deformable attention. Per head, output is the softmax-weighted
/// sum of sampled values over all (level, point) pairs jointly; heads are
/// concatenated and passed through output_proj. The sampling backend follows
/// cfg.sampling_mode.
MsdaResult msda_forward(const FeaturePyramid& pyramid, const QueryBatch& queries,
                        const DeformAttnParams& params, const DeformAttnConfig& cfg);

struct DeformAttnGrads {
  LinearGrads value_proj;
  LinearGrads offset_proj;
  LinearGrads attn_proj;
  LinearGrads output_proj;

  static DeformAttnGrads zeros_like(const DeformAttnParams& p) {
    return DeformAttnGrads{LinearGrads::zeros_like(p.value_proj),
                           LinearGrads::zeros_like(p.offset_proj),
                           LinearGrads::zeros_like(p.attn_proj),
                           LinearGrads::zeros_like(p.output_proj)};
  }
};

struct MsdaGrads {
  std::vector<Tensor> d_pyramid_values;  // per level (B, C, H_l, W_l)
  Tensor d_query_embeddings;             // (B, Nq, D)
  DeformAttnGrads params;
};

/// Manual adjoint of msda_forward. In discrete mode d_coords is zero, so
/// offset_proj receives a structurally zero gradient; when offsets_frozen the
/// offset_proj gradient is forced to exact zero regardless of mode.
MsdaGrads msda_backward(const FeaturePyramid& pyramid, const QueryBatch& queries,
                        const DeformAttnParams& params, const DeformAttnConfig& cfg,
                        const AttnIntermediates& cache, const Tensor& d_output);

/// heads * sumK * num_query * num_decoder.
int64_t count_sampling_points(const DeformAttnConfig& cfg);

/// Swaps the sampling backend in place. Discrete freezes the offset predictor,
/// bilinear unfreezes it; numeric parameters are never touched. Idempotent.
void set_sampling_mode(DeformAttnParams& params, DeformAttnConfig& cfg, SamplingMode mode);

/// Parameter checkpoint in the fixture container (named flat sections).
void save_params(const DeformAttnParams& params, const std::filesystem::path& path);
DeformAttnParams load_params(const std::filesystem::path& path);

}  // namespace msda
