// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_RNG_HPP
#define MCCM_CORE_RNG_HPP

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace mccm {

/// Seeded random source with explicitly constructed variates, so that a
/// given seed reproduces the same stream on every platform (the standard
/// distribution classes do not promise that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is
  /// cached.
  double normal();

  Eigen::VectorXd uniform_vector(int n);
  Eigen::MatrixXd normal_matrix(int rows, int cols);

  /// Uniform sample from the probability simplex (flat Dirichlet),
  /// via normalized exponentials.
  Eigen::VectorXd simplex_uniform(int n);

  /// Derives an independent stream seed from a master seed and an index
  /// (splitmix64 finalizer).
  static std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mccm

#endif  // MCCM_CORE_RNG_HPP
