// SPDX-License-Identifier: Apache-2.0

#include "core/rng.hpp"

#include <cmath>
#include <numbers>

namespace mccm {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd Rng::uniform_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = uniform();
  }
  return v;
}

Eigen::MatrixXd Rng::normal_matrix(int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      m(r, c) = normal();
    }
  }
  return m;
}

Eigen::VectorXd Rng::simplex_uniform(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = -std::log(1.0 - uniform());
  }
  const double sum = v.sum();
  if (sum <= 0.0) {
    return Eigen::VectorXd::Constant(n, 1.0 / n);
  }
  return v / sum;
}

std::uint64_t Rng::derive_stream(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mccm
