// SPDX-License-Identifier: Apache-2.0

#include "core/classifier.hpp"

#include <limits>
#include <map>

namespace mccm {

namespace {

std::size_t argmin_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) {
      best = i;
    }
  }
  return best;
}

}  // namespace

Classification classify(const SpdMatrix& y,
                        const std::vector<ConvexClassModel>& models,
                        MccmVariant variant, const SpgParams& params) {
  if (models.empty()) {
    throw Error(ErrorCode::InvalidArgument, "classify: need at least one model");
  }
  for (const ConvexClassModel& m : models) {
    detail::require_same_dim(y.dim(), m.dim(), "classify");
  }

  std::vector<DistanceResult> per_class;
  per_class.reserve(models.size());

  // Per-class solver errors are rethrown annotated with the class label.
  auto annotated = [](const ConvexClassModel& m, auto&& fn) -> DistanceResult {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), "classify[class " + m.label() + "]: " + e.what());
    }
  };

  switch (variant) {
    case MccmVariant::FM:
    case MccmVariant::CS: {
      const SqrtPair roots = spd_sqrt_pair(y);
      for (const ConvexClassModel& m : models) {
        per_class.push_back(annotated(m, [&] {
          std::vector<Eigen::MatrixXd> whitened;
          whitened.reserve(m.size());
          for (const SpdMatrix& x : m.points()) {
            whitened.push_back(roots.inv_sqrt * x.mat() * roots.inv_sqrt);
          }
          if (variant == MccmVariant::CS) {
            return detail::solve_cs_dense(whitened, params);
          }
          std::vector<Eigen::MatrixXd> logs;
          logs.reserve(whitened.size());
          for (const Eigen::MatrixXd& w : whitened) {
            logs.push_back(spd_log(SpdMatrix::unchecked(w)).mat());
          }
          return detail::solve_fm_from_logs(logs, params);
        }));
      }
      break;
    }
    case MccmVariant::LE: {
      const Eigen::VectorXd y_vec = vectorize_symmetric(spd_log(y));
      for (const ConvexClassModel& m : models) {
        per_class.push_back(annotated(m, [&] {
          return detail::solve_le(y_vec, detail::le_dictionary(m), params);
        }));
      }
      break;
    }
  }

  std::vector<double> distances;
  distances.reserve(per_class.size());
  for (const DistanceResult& r : per_class) {
    distances.push_back(r.distance);
  }
  const std::size_t best = argmin_index(distances);
  return Classification{models[best].label(), std::move(per_class)};
}

NearestNeighbor geo_nn(const SpdMatrix& y,
                       const std::vector<LabeledPoint>& training) {
  if (training.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "geo_nn: need at least one training point");
  }
  NearestNeighbor best{training.front().label,
                       std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < training.size(); ++i) {
    const double d = geodesic_distance(y, training[i].point);
    if (d < best.distance) {
      best = NearestNeighbor{training[i].label, d, i};
    }
  }
  return best;
}

std::optional<ClassifierKind> classifier_kind_from_name(std::string_view name) {
  if (name == "fm") return ClassifierKind::Fm;
  if (name == "cs") return ClassifierKind::Cs;
  if (name == "le") return ClassifierKind::Le;
  if (name == "geo-nn") return ClassifierKind::GeoNn;
  if (name == "euclid-hull") return ClassifierKind::EuclidHull;
  return std::nullopt;
}

const char* classifier_kind_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Fm:
      return "fm";
    case ClassifierKind::Cs:
      return "cs";
    case ClassifierKind::Le:
      return "le";
    case ClassifierKind::GeoNn:
      return "geo-nn";
    case ClassifierKind::EuclidHull:
      return "euclid-hull";
  }
  return "?";
}

Classifier::Classifier(std::vector<LabeledPoint> training, ClassifierKind kind,
                       SpgParams params)
    : kind_(kind), params_(params) {
  if (training.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "Classifier: empty training set");
  }
  dim_ = training.front().point.dim();

  // Group per label, preserving first-occurrence order.
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<SpdMatrix>> grouped;
  for (LabeledPoint& lp : training) {
    detail::require_same_dim(dim_, lp.point.dim(), "Classifier");
    auto [it, inserted] = index.try_emplace(lp.label, labels_.size());
    if (inserted) {
      labels_.push_back(lp.label);
      grouped.emplace_back();
    }
    grouped[it->second].push_back(lp.point);
  }
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    models_.emplace_back(labels_[c], std::move(grouped[c]));
  }

  switch (kind_) {
    case ClassifierKind::Le:
      for (const ConvexClassModel& m : models_) {
        le_dictionaries_.push_back(detail::le_dictionary(m));
      }
      break;
    case ClassifierKind::EuclidHull:
      for (const ConvexClassModel& m : models_) {
        std::vector<Eigen::VectorXd> vecs;
        vecs.reserve(m.size());
        for (const SpdMatrix& x : m.points()) {
          vecs.push_back(vectorize_symmetric(x.mat()));
        }
        hull_vectors_.push_back(std::move(vecs));
      }
      break;
    case ClassifierKind::GeoNn:
      points_ = std::move(training);
      break;
    default:
      break;
  }
}

Classifier::Outcome Classifier::classify_query(const SpdMatrix& y) const {
  detail::require_same_dim(dim_, y.dim(), "Classifier");
  Outcome out;
  std::vector<double> distances(labels_.size(), 0.0);

  switch (kind_) {
    case ClassifierKind::Fm:
    case ClassifierKind::Cs: {
      const MccmVariant variant =
          kind_ == ClassifierKind::Fm ? MccmVariant::FM : MccmVariant::CS;
      Classification c = classify(y, models_, variant, params_);
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        out.per_class.push_back(PerClass{labels_[i], c.per_class[i].distance,
                                         c.per_class[i].weights.values()});
        distances[i] = c.per_class[i].distance;
      }
      break;
    }
    case ClassifierKind::Le: {
      const Eigen::VectorXd y_vec = vectorize_symmetric(spd_log(y));
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        DistanceResult r =
            detail::solve_le(y_vec, le_dictionaries_[i], params_);
        distances[i] = r.distance;
        out.per_class.push_back(
            PerClass{labels_[i], r.distance, r.weights.values()});
      }
      break;
    }
    case ClassifierKind::GeoNn: {
      std::vector<std::vector<double>> dists_per_class(labels_.size());
      std::map<std::string, std::size_t> label_index;
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        label_index[labels_[i]] = i;
      }
      std::vector<double> best(labels_.size(),
                               std::numeric_limits<double>::infinity());
      std::vector<int> best_member(labels_.size(), 0);
      std::vector<int> member_count(labels_.size(), 0);
      for (const LabeledPoint& lp : points_) {
        const std::size_t c = label_index.at(lp.label);
        const double d = geodesic_distance(y, lp.point);
        if (d < best[c]) {
          best[c] = d;
          best_member[c] = member_count[c];
        }
        ++member_count[c];
      }
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        distances[i] = best[i];
        Eigen::VectorXd w = Eigen::VectorXd::Zero(member_count[i]);
        w(best_member[i]) = 1.0;
        out.per_class.push_back(PerClass{labels_[i], best[i], std::move(w)});
      }
      break;
    }
    case ClassifierKind::EuclidHull: {
      const Eigen::VectorXd y_vec = vectorize_symmetric(y.mat());
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        DistanceResult r = euclidean_hull_dist(y_vec, hull_vectors_[i], params_);
        distances[i] = r.distance;
        out.per_class.push_back(
            PerClass{labels_[i], r.distance, r.weights.values()});
      }
      break;
    }
  }

  out.label = labels_[argmin_index(distances)];
  return out;
}

}  // namespace mccm
