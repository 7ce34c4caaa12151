// SPDX-License-Identifier: Apache-2.0

#include "core/descriptors.hpp"

#include <cmath>
#include <sstream>

namespace mccm {

FeatureTable::FeatureTable(Eigen::MatrixXd rows, std::string provenance)
    : rows_(std::move(rows)), provenance_(std::move(provenance)) {
  if (rows_.rows() < 2 || rows_.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "FeatureTable: need at least two rows");
  }
  if (!rows_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                "FeatureTable: entries must be finite");
  }
}

Eigen::MatrixXd sample_covariance(const FeatureTable& table) {
  const Eigen::RowVectorXd mean = table.rows().colwise().mean();
  const Eigen::MatrixXd centered = table.rows().rowwise() - mean;
  return centered.transpose() * centered /
         static_cast<double>(table.count() - 1);
}

double suggested_ridge(const Eigen::MatrixXd& covariance) {
  return 1e-6 * covariance.trace() / static_cast<double>(covariance.rows());
}

SpdMatrix covariance_descriptor(const FeatureTable& table, double ridge) {
  if (ridge < 0.0 || !std::isfinite(ridge)) {
    throw Error(ErrorCode::InvalidArgument,
                "covariance_descriptor: ridge must be >= 0");
  }
  const Eigen::MatrixXd cov = sample_covariance(table);
  Eigen::MatrixXd loaded = cov;
  loaded.diagonal().array() += ridge;

  EigenPair eig = sym_eig(loaded);
  const double min_eig = eig.values(0);
  const double max_eig = eig.values(eig.values.size() - 1);
  if (min_eig <= pd_floor(max_eig)) {
    const double needed = pd_floor(max_eig) - min_eig;
    const double suggestion =
        std::max(10.0 * needed + ridge, suggested_ridge(cov));
    std::ostringstream os;
    os << "covariance_descriptor: rank deficient at ridge " << ridge
       << " (min eigenvalue " << min_eig << "); try ridge >= " << suggestion;
    throw RankDeficientError(os.str(), min_eig, suggestion);
  }
  return SpdMatrix::unchecked(std::move(loaded));
}

SpdMatrix set_covariance(const FeatureTable& table, double ridge) {
  return covariance_descriptor(table, ridge);
}

namespace {

void require_grid(const Eigen::MatrixXd& grid, const char* op) {
  if (grid.rows() < 5 || grid.cols() < 5) {
    std::ostringstream os;
    os << op << ": grid must be at least 5x5, got " << grid.rows() << "x"
       << grid.cols();
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!grid.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(op) + ": grid entries must be finite");
  }
}

}  // namespace

FeatureTable brodatz_pixel_features(const Eigen::MatrixXd& gray) {
  require_grid(gray, "brodatz_pixel_features");
  const int rows = static_cast<int>(gray.rows());
  const int cols = static_cast<int>(gray.cols());
  Eigen::MatrixXd features((rows - 2) * (cols - 2), 5);
  int n = 0;
  for (int r = 1; r < rows - 1; ++r) {
    for (int c = 1; c < cols - 1; ++c) {
      const double dx = 0.5 * (gray(r, c + 1) - gray(r, c - 1));
      const double dy = 0.5 * (gray(r + 1, c) - gray(r - 1, c));
      const double dxx = gray(r, c + 1) - 2.0 * gray(r, c) + gray(r, c - 1);
      const double dyy = gray(r + 1, c) - 2.0 * gray(r, c) + gray(r - 1, c);
      features.row(n++) << gray(r, c), std::abs(dx), std::abs(dy),
          std::abs(dxx), std::abs(dyy);
    }
  }
  return FeatureTable(std::move(features), "brodatz-pixel");
}

Eigen::MatrixXd resize_bilinear(const Eigen::MatrixXd& grid, int rows,
                                int cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "resize_bilinear: target size must be positive");
  }
  if (grid.rows() < 1 || grid.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "resize_bilinear: empty grid");
  }
  const int in_rows = static_cast<int>(grid.rows());
  const int in_cols = static_cast<int>(grid.cols());
  Eigen::MatrixXd out(rows, cols);
  const double row_scale =
      rows > 1 ? static_cast<double>(in_rows - 1) / (rows - 1) : 0.0;
  const double col_scale =
      cols > 1 ? static_cast<double>(in_cols - 1) / (cols - 1) : 0.0;
  for (int r = 0; r < rows; ++r) {
    const double y = r * row_scale;
    const int y0 = std::min(static_cast<int>(y), in_rows - 1);
    const int y1 = std::min(y0 + 1, in_rows - 1);
    const double fy = y - y0;
    for (int c = 0; c < cols; ++c) {
      const double x = c * col_scale;
      const int x0 = std::min(static_cast<int>(x), in_cols - 1);
      const int x1 = std::min(x0 + 1, in_cols - 1);
      const double fx = x - x0;
      out(r, c) = (1.0 - fy) * ((1.0 - fx) * grid(y0, x0) + fx * grid(y0, x1)) +
                  fy * ((1.0 - fx) * grid(y1, x0) + fx * grid(y1, x1));
    }
  }
  return out;
}

FeatureTable ethz_pixel_features(const Eigen::MatrixXd& red,
                                 const Eigen::MatrixXd& green,
                                 const Eigen::MatrixXd& blue) {
  require_grid(red, "ethz_pixel_features");
  if (green.rows() != red.rows() || green.cols() != red.cols() ||
      blue.rows() != red.rows() || blue.cols() != red.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "ethz_pixel_features: channels must share the grid size");
  }
  require_grid(green, "ethz_pixel_features");
  require_grid(blue, "ethz_pixel_features");

  const Eigen::MatrixXd* channels[3] = {&red, &green, &blue};
  const int rows = static_cast<int>(red.rows());
  const int cols = static_cast<int>(red.cols());
  Eigen::MatrixXd features((rows - 2) * (cols - 2), 11);
  int n = 0;
  for (int r = 1; r < rows - 1; ++r) {
    for (int c = 1; c < cols - 1; ++c) {
      Eigen::RowVectorXd row(11);
      row(0) = static_cast<double>(c);
      row(1) = static_cast<double>(r);
      for (int ch = 0; ch < 3; ++ch) {
        const Eigen::MatrixXd& img = *channels[ch];
        const double dx = 0.5 * (img(r, c + 1) - img(r, c - 1));
        const double dy = 0.5 * (img(r + 1, c) - img(r - 1, c));
        const double dxx = img(r, c + 1) - 2.0 * img(r, c) + img(r, c - 1);
        const double dyy = img(r + 1, c) - 2.0 * img(r, c) + img(r - 1, c);
        row(2 + ch) = img(r, c);
        row(5 + ch) = std::hypot(dx, dy);
        row(8 + ch) = std::hypot(dxx, dyy);
      }
      features.row(n++) = row;
    }
  }
  return FeatureTable(std::move(features), "ethz-pixel");
}

}  // namespace mccm
