// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_DCT_HPP
#define MCCM_CORE_DCT_HPP

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "core/error.hpp"

namespace mccm {

/// Orthonormal type-II 2-D discrete cosine transform (separable direct
/// evaluation; grids here are small).
Eigen::MatrixXd dct2(const Eigen::MatrixXd& grid);

/// Zig-zag traversal order of an R x C coefficient grid, lowest frequencies
/// first (JPEG convention generalized to rectangles).
std::vector<std::pair<int, int>> zigzag_order(int rows, int cols);

/// First k zig-zag-ordered DCT coefficients of the grid.
Eigen::VectorXd dct_features(const Eigen::MatrixXd& grid, int k);

}  // namespace mccm

#endif  // MCCM_CORE_DCT_HPP
