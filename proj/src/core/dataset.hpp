// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_DATASET_HPP
#define MCCM_CORE_DATASET_HPP

#include <string>
#include <vector>

#include "core/classifier.hpp"

namespace mccm {

// Datasets are JSON Lines files, one object per point:
//   {"label": "...", "dim": d, "matrix": [d*d doubles, row-major]}
// Matrices are validated on load; doubles are written with 17 significant
// digits so that save/load round-trips are value exact.

std::vector<LabeledPoint> load_dataset(const std::string& path);

void save_dataset(const std::string& path,
                  const std::vector<LabeledPoint>& records);

/// Formats one dataset line (exposed for tests).
std::string dataset_line(const LabeledPoint& record);

}  // namespace mccm

#endif  // MCCM_CORE_DATASET_HPP
