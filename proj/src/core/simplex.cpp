// SPDX-License-Identifier: Apache-2.0

#include "core/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace mccm {

SimplexWeights::SimplexWeights(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "SimplexWeights: need at least one entry");
  }
  if (!values_.allFinite() || (values_.array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument,
                "SimplexWeights: entries must be finite and nonnegative");
  }
  const double sum = values_.sum();
  if (std::abs(sum - 1.0) > kSumTol) {
    std::ostringstream os;
    os << "SimplexWeights: entries sum to " << sum << ", expected 1";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

SimplexWeights SimplexWeights::uniform(int n) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "SimplexWeights: need at least one entry");
  }
  return SimplexWeights(Trusted{},
                        Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

SimplexWeights SimplexWeights::vertex(int n, int index) {
  if (n < 1 || index < 0 || index >= n) {
    throw Error(ErrorCode::InvalidArgument, "SimplexWeights: bad vertex index");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(index) = 1.0;
  return SimplexWeights(Trusted{}, std::move(v));
}

SimplexWeights project_simplex(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  if (n < 1) {
    throw Error(ErrorCode::InvalidArgument, "project_simplex: empty input");
  }
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                "project_simplex: entries must be finite");
  }

  std::vector<double> u(v.data(), v.data() + n);
  std::stable_sort(u.begin(), u.end(), std::greater<double>());

  double cumulative = 0.0;
  double theta = u[0] - 1.0;
  for (int j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      theta = candidate;
    }
  }

  Eigen::VectorXd w = (v.array() - theta).max(0.0);
  w /= w.sum();  // removes the last few ulps of drift
  return SimplexWeights(SimplexWeights::Trusted{}, std::move(w));
}

}  // namespace mccm
