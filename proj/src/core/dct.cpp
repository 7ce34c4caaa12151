// SPDX-License-Identifier: Apache-2.0

#include "core/dct.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mccm {

namespace {

/// Orthonormal DCT-II basis of size n: B(u, x) = a(u) cos(pi (2x+1) u / 2n).
Eigen::MatrixXd dct_basis(int n) {
  Eigen::MatrixXd b(n, n);
  const double norm0 = std::sqrt(1.0 / n);
  const double norm = std::sqrt(2.0 / n);
  for (int u = 0; u < n; ++u) {
    for (int x = 0; x < n; ++x) {
      b(u, x) = (u == 0 ? norm0 : norm) *
                std::cos(std::numbers::pi * (2.0 * x + 1.0) * u / (2.0 * n));
    }
  }
  return b;
}

}  // namespace

Eigen::MatrixXd dct2(const Eigen::MatrixXd& grid) {
  if (grid.rows() < 1 || grid.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "dct2: empty grid");
  }
  const Eigen::MatrixXd row_basis = dct_basis(static_cast<int>(grid.rows()));
  const Eigen::MatrixXd col_basis = dct_basis(static_cast<int>(grid.cols()));
  return row_basis * grid * col_basis.transpose();
}

std::vector<std::pair<int, int>> zigzag_order(int rows, int cols) {
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<std::size_t>(rows) * cols);
  for (int s = 0; s <= rows + cols - 2; ++s) {
    const int u_lo = std::max(0, s - cols + 1);
    const int u_hi = std::min(s, rows - 1);
    if (s % 2 == 1) {
      for (int u = u_lo; u <= u_hi; ++u) {
        order.emplace_back(u, s - u);
      }
    } else {
      for (int u = u_hi; u >= u_lo; --u) {
        order.emplace_back(u, s - u);
      }
    }
  }
  return order;
}

Eigen::VectorXd dct_features(const Eigen::MatrixXd& grid, int k) {
  const int total = static_cast<int>(grid.rows() * grid.cols());
  if (k < 1 || k > total) {
    std::ostringstream os;
    os << "dct_features: k must be in [1, " << total << "], got " << k;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const Eigen::MatrixXd coeffs = dct2(grid);
  const auto order = zigzag_order(static_cast<int>(grid.rows()),
                                  static_cast<int>(grid.cols()));
  Eigen::VectorXd out(k);
  for (int i = 0; i < k; ++i) {
    out(i) = coeffs(order[i].first, order[i].second);
  }
  return out;
}

}  // namespace mccm
