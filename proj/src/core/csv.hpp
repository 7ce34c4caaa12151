// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_CSV_HPP
#define MCCM_CORE_CSV_HPP

#include <Eigen/Core>

#include <string>
#include <vector>

#include "core/error.hpp"

namespace mccm {

/// Reads a CSV file of numeric rows (comma or whitespace separated).
/// Blank lines split the file into blocks; each block must be rectangular.
/// Used both for grids (one block per image/frame/channel) and for feature
/// tables (rows = samples).
std::vector<Eigen::MatrixXd> read_csv_blocks(const std::string& path);

/// Parses CSV content from a string; exposed for tests.
std::vector<Eigen::MatrixXd> parse_csv_blocks(const std::string& content);

}  // namespace mccm

#endif  // MCCM_CORE_CSV_HPP
