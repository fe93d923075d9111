// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "msda/config.hpp"
#include "msda/tensor.hpp"

namespace msda {

/// One resolution level of feature values, laid out (B, C, H, W).
struct FeatureLevel {
  int64_t batch = 0;
  int64_t channels = 0;
  int64_t height = 0;
  int64_t width = 0;
  Tensor values;

  static FeatureLevel zeros(int64_t b, int64_t c, int64_t h, int64_t w) {
    FeatureLevel lvl{b, c, h, w, Tensor::zeros({b, c, h, w})};
    return lvl;
  }

  void validate() const;
};

/// Ordered multi-level value maps; levels[0] is the highest resolution
/// (stride-8/16/32 detector convention). All levels share batch and channels.
struct FeaturePyramid {
  std::vector<FeatureLevel> levels;

  int64_t num_levels() const { return static_cast<int64_t>(levels.size()); }
  int64_t batch() const { return levels.empty() ? 0 : levels[0].batch; }
  int64_t channels() const { return levels.empty() ? 0 : levels[0].channels; }

  std::vector<std::array<int64_t, 2>> spatial_shapes() const;  // (H_l, W_l)
  std::vector<int64_t> level_start_index() const;              // prefix sums of H_l*W_l
  int64_t total_cells() const;

  void validate() const;
};

/// Per-query inputs to attention: embeddings (B, Nq, D) and normalized
/// reference points (B, Nq, 2) in [0,1], ordered (x, y).
struct QueryBatch {
  Tensor embeddings;
  Tensor reference_points;

  void validate() const;
};

struct FlatPyramid {
  Tensor values;  // (B, sum H_l*W_l, C)
  std::vector<std::array<int64_t, 2>> spatial_shapes;
  std::vector<int64_t> level_start_index;
};

/// Row level_start_index[l] + y*W_l + x of the output holds
/// levels[l].values[:, :, y, x]. Round-trips bitwise with unflatten_pyramid.
FlatPyramid flatten_pyramid(const FeaturePyramid& p);

FeaturePyramid unflatten_pyramid(const Tensor& flat,
                                 const std::vector<std::array<int64_t, 2>>& spatial_shapes);

struct ValidationResult {
  bool ok = true;
  std::string error;  // named violation when !ok
};

/// Checks a config against a pyramid: level-count match, head divisibility,
/// non-negative counts with a non-empty total budget, and embed-dim/channel
/// agreement.
ValidationResult validate_config(const DeformAttnConfig& cfg, const FeaturePyramid& p);

}  // namespace msda
