// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_CLASSIFIER_HPP
#define MCCM_CORE_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/convex_model.hpp"

namespace mccm {

struct LabeledPoint {
  std::string label;
  SpdMatrix point;
};

struct Classification {
  std::string label;  // argmin class; ties go to the earliest class
  std::vector<DistanceResult> per_class;
};

/// Nearest-convex-class-model classifier: evaluates the chosen variant's
/// distance against every model and returns the argmin label.  The query
/// whitening is computed once and shared across classes.
Classification classify(const SpdMatrix& y,
                        const std::vector<ConvexClassModel>& models,
                        MccmVariant variant, const SpgParams& params = {});

struct NearestNeighbor {
  std::string label;
  double distance;
  std::size_t index;  // position in the training list
};

/// Geodesic nearest neighbor baseline; ties go to the earliest point.
NearestNeighbor geo_nn(const SpdMatrix& y,
                       const std::vector<LabeledPoint>& training);

enum class ClassifierKind { Fm, Cs, Le, GeoNn, EuclidHull };

std::optional<ClassifierKind> classifier_kind_from_name(std::string_view name);
const char* classifier_kind_name(ClassifierKind kind);

/// A trained classifier over labeled SPD points: groups the training set
/// into one ConvexClassModel per label (in order of first occurrence) and
/// precomputes whatever the chosen method can reuse across queries (the
/// log-domain dictionaries for LE, vectorized points for the Euclidean
/// hull baseline).
class Classifier {
 public:
  Classifier(std::vector<LabeledPoint> training, ClassifierKind kind,
             SpgParams params = {});

  struct PerClass {
    std::string label;
    double distance;
    Eigen::VectorXd weights;  // empty for geo-nn beyond the chosen vertex
  };
  struct Outcome {
    std::string label;
    std::vector<PerClass> per_class;
  };

  Outcome classify_query(const SpdMatrix& y) const;

  int dim() const { return dim_; }
  ClassifierKind kind() const { return kind_; }
  const std::vector<std::string>& class_labels() const { return labels_; }

 private:
  ClassifierKind kind_;
  SpgParams params_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<ConvexClassModel> models_;
  std::vector<LabeledPoint> points_;              // geo-nn
  std::vector<Eigen::MatrixXd> le_dictionaries_;  // le
  std::vector<std::vector<Eigen::VectorXd>> hull_vectors_;  // euclid-hull
};

}  // namespace mccm

#endif  // MCCM_CORE_CLASSIFIER_HPP
