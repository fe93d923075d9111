// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "msda/pyramid.hpp"
#include "msda/tensor.hpp"

namespace msda {

// Self-describing binary container of named tensor sections, little-endian:
//   magic "MSDAFIX1"
//   u32 section count
//   per section: u32 name length, name bytes, u8 dtype (0=f64, 1=f32),
//                u32 rank, i64 extents[rank], raw row-major data
// Pyramids are stored one section per level ("level0", "level1", ...);
// parameter checkpoints reuse the container with named flat sections.

struct FixtureSection {
  std::string name;
  Tensor data;
};

void write_fixture(const std::filesystem::path& path,
                   const std::vector<FixtureSection>& sections);
std::vector<FixtureSection> read_fixture(const std::filesystem::path& path);

void save_pyramid(const FeaturePyramid& p, const std::filesystem::path& path);
FeaturePyramid load_pyramid(const std::filesystem::path& path);

}  // namespace msda
