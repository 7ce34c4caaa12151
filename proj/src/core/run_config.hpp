// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_RUN_CONFIG_HPP
#define MCCM_CORE_RUN_CONFIG_HPP

#include <json.hpp>

#include <cstdint>

#include "core/frechet.hpp"
#include "core/spg.hpp"

namespace mccm {

/// Solver and pipeline settings shared by the commands.  apply() overlays
/// values found in a JSON object onto the defaults, leaving everything else
/// untouched, so a --config file and individual flags compose.
struct RunConfig {
  SpgParams spg;
  MeanParams mean;
  double ridge = -1.0;  // < 0 selects the trace-scaled default per table
  std::uint64_t seed = 42;
  int threads = 1;
  bool include_weights = false;

  void apply(const nlohmann::json& j);
};

}  // namespace mccm

#endif  // MCCM_CORE_RUN_CONFIG_HPP
