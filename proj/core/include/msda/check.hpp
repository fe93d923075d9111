// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace msda {

/// Thrown on any contract violation (shape mismatch, bad config, divergence).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msda

#define MSDA_CHECK(cond, msg)                                  \
  do {                                                         \
    if (!(cond)) {                                             \
      std::ostringstream oss_;                                 \
      oss_ << "check failed (" << #cond << "): " << msg;       \
      throw ::msda::Error(oss_.str());                         \
    }                                                          \
  } while (0)
