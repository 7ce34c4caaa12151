// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_DESCRIPTORS_HPP
#define MCCM_CORE_DESCRIPTORS_HPP

#include <string>

#include "core/matrix.hpp"

namespace mccm {

/// A stack of feature vectors (one per row) from which covariance
/// descriptors are built.
class FeatureTable {
 public:
  explicit FeatureTable(Eigen::MatrixXd rows, std::string provenance = "");

  int count() const { return static_cast<int>(rows_.rows()); }
  int dim() const { return static_cast<int>(rows_.cols()); }
  const Eigen::MatrixXd& rows() const { return rows_; }
  const std::string& provenance() const { return provenance_; }

 private:
  Eigen::MatrixXd rows_;
  std::string provenance_;
};

/// Mean-centered sample covariance with 1/(M-1) normalization.
Eigen::MatrixXd sample_covariance(const FeatureTable& table);

/// Default diagonal loading: 1e-6 * trace / dim of the raw covariance.
double suggested_ridge(const Eigen::MatrixXd& covariance);

/// Sample covariance plus ridge * I, validated as an SpdMatrix.  Throws
/// RankDeficientError (with a workable ridge suggestion) when the loaded
/// matrix still fails the positive-definiteness floor.
SpdMatrix covariance_descriptor(const FeatureTable& table, double ridge);

/// Covariance of a set of per-frame feature vectors; the same computation
/// as covariance_descriptor, named for the set/video pipelines.
SpdMatrix set_covariance(const FeatureTable& table, double ridge);

/// Per-pixel texture features [I, |dI/dx|, |dI/dy|, |d2I/dx2|, |d2I/dy2|]
/// over interior pixels, central differences, border excluded.
/// x runs along columns, y along rows; the grid must be at least 5x5.
FeatureTable brodatz_pixel_features(const Eigen::MatrixXd& gray);

/// Per-pixel appearance features [x, y, R, G, B, R', G', B', R'', G'', B'']
/// where X' and X'' are first/second central-difference magnitudes
/// sqrt(dx^2 + dy^2) per channel.  Positions are 0-based (x = column,
/// y = row); all three channels must agree in size, at least 5x5.
FeatureTable ethz_pixel_features(const Eigen::MatrixXd& red,
                                 const Eigen::MatrixXd& green,
                                 const Eigen::MatrixXd& blue);

/// Bilinear resampling of a numeric grid; preprocessing for the frame-set
/// recipes.
Eigen::MatrixXd resize_bilinear(const Eigen::MatrixXd& grid, int rows,
                                int cols);

}  // namespace mccm

#endif  // MCCM_CORE_DESCRIPTORS_HPP
