// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_TESTS_SUPPORT_HPP
#define MCCM_TESTS_SUPPORT_HPP

#include <Eigen/Dense>

#include <unistd.h>

#include <filesystem>
#include <string>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace mccm::test {

/// Random SPD matrix for fixtures (independent of synth::random_spd's
/// construction: Gram of a Gaussian plus a diagonal shift).
inline SpdMatrix random_spd_gram(Rng& rng, int dim, double shift = 0.5) {
  const Eigen::MatrixXd g = rng.normal_matrix(dim, dim);
  Eigen::MatrixXd m = g * g.transpose() / dim;
  m.diagonal().array() += shift;
  return SpdMatrix::checked(std::move(m));
}

inline SymMatrix random_sym(Rng& rng, int dim, double scale = 1.0) {
  return sym_unchecked(scale * rng.normal_matrix(dim, dim));
}

/// Random invertible matrix with singular values in [0.5, 2].
inline Eigen::MatrixXd random_invertible(Rng& rng, int dim) {
  const Eigen::MatrixXd g = rng.normal_matrix(dim, dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s(dim);
  for (int i = 0; i < dim; ++i) {
    s(i) = 0.5 + 1.5 * (i + 1) / static_cast<double>(dim + 1);
  }
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

/// Path under a per-process scratch directory (created on first use).
inline std::string temp_path(const std::string& name) {
  namespace fs = std::filesystem;
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mccm-tests-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

}  // namespace mccm::test

#endif  // MCCM_TESTS_SUPPORT_HPP
