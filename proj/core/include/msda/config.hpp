// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "msda/check.hpp"

namespace msda {

enum class SamplingMode { bilinear, discrete };

std::string to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(const std::string& s);

/// Deformable-attention configuration. points_per_level holds one count per
/// pyramid level; levels may have distinct counts, and a count of zero removes
/// the level from sampling entirely.
struct DeformAttnConfig {
  int64_t heads = 8;
  std::vector<int64_t> points_per_level = {4, 4, 4};
  int64_t num_query = 300;
  int64_t num_decoder = 3;
  int64_t embed_dim = 256;
  SamplingMode sampling_mode = SamplingMode::bilinear;

  /// Sum of per-level point counts (the per-head per-query budget).
  int64_t total_points() const {
    return std::accumulate(points_per_level.begin(), points_per_level.end(), int64_t{0});
  }

  int64_t head_dim() const { return embed_dim / heads; }

  /// Prefix sums of points_per_level; start of each level's block in the
  /// level-major (level 0 first) offset/attention layout.
  std::vector<int64_t> level_point_start() const {
    std::vector<int64_t> start(points_per_level.size(), 0);
    for (size_t l = 1; l < points_per_level.size(); ++l) {
      start[l] = start[l - 1] + points_per_level[l - 1];
    }
    return start;
  }
};

void save_config(const DeformAttnConfig& cfg, const std::filesystem::path& path);
DeformAttnConfig load_config(const std::filesystem::path& path);

}  // namespace msda
