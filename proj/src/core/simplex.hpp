// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_SIMPLEX_HPP
#define MCCM_CORE_SIMPLEX_HPP

#include <Eigen/Core>

#include "core/error.hpp"

namespace mccm {

/// Nonnegative weights summing to one.
class SimplexWeights {
 public:
  explicit SimplexWeights(Eigen::VectorXd values);

  static SimplexWeights uniform(int n);
  static SimplexWeights vertex(int n, int index);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_(i); }
  const Eigen::VectorXd& values() const { return values_; }

  static constexpr double kSumTol = 1e-10;

 private:
  struct Trusted {};
  SimplexWeights(Trusted, Eigen::VectorXd values)
      : values_(std::move(values)) {}

  friend SimplexWeights project_simplex(const Eigen::VectorXd& v);

  Eigen::VectorXd values_;
};

/// Euclidean projection onto {w >= 0, sum w = 1}; sort-based, O(N log N),
/// deterministic tie handling, idempotent.
SimplexWeights project_simplex(const Eigen::VectorXd& v);

}  // namespace mccm

#endif  // MCCM_CORE_SIMPLEX_HPP
