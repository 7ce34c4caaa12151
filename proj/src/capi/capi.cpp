// SPDX-License-Identifier: Apache-2.0

#include "mccm/mccm.h"

#include <json.hpp>

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/classifier.hpp"
#include "core/dataset.hpp"
#include "core/run_config.hpp"
#include "core/runner.hpp"
#include "core/synth.hpp"

struct mccm_dataset {
  std::vector<mccm::LabeledPoint> records;
};

struct mccm_classifier {
  mccm::Classifier impl;
};

struct mccm_report {
  std::string text;
};

namespace {

thread_local std::string g_last_error;

mccm_status map_code(mccm::ErrorCode code) {
  using mccm::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument:
      return MCCM_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch:
      return MCCM_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotSymmetric:
      return MCCM_ERR_NOT_SYMMETRIC;
    case ErrorCode::DegenerateMatrix:
      return MCCM_ERR_DEGENERATE_MATRIX;
    case ErrorCode::EigFailed:
      return MCCM_ERR_EIG_FAILED;
    case ErrorCode::MaxIterExceeded:
      return MCCM_ERR_MAX_ITER;
    case ErrorCode::NonFiniteObjective:
      return MCCM_ERR_NON_FINITE;
    case ErrorCode::InvalidGram:
      return MCCM_ERR_INVALID_GRAM;
    case ErrorCode::SolverFailed:
      return MCCM_ERR_SOLVER_FAILED;
    case ErrorCode::RankDeficient:
      return MCCM_ERR_RANK_DEFICIENT;
    case ErrorCode::ConstructionFailed:
      return MCCM_ERR_CONSTRUCTION_FAILED;
    case ErrorCode::ParseError:
      return MCCM_ERR_PARSE;
    case ErrorCode::InvalidRecord:
      return MCCM_ERR_INVALID_RECORD;
    case ErrorCode::IoError:
      return MCCM_ERR_IO;
  }
  return MCCM_ERR_UNKNOWN;
}

template <typename Fn>
mccm_status guarded(Fn&& fn) {
  try {
    fn();
    return MCCM_OK;
  } catch (const mccm::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("json: ") + e.what();
    return MCCM_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MCCM_ERR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MCCM_ERR_UNKNOWN;
  }
}

mccm_status require(bool ok, const char* message) {
  if (ok) {
    return MCCM_OK;
  }
  g_last_error = message;
  return MCCM_ERR_INVALID_ARGUMENT;
}

Eigen::MatrixXd to_matrix(int dim, const double* data) {
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      m(r, c) = data[static_cast<std::size_t>(r) * dim + c];
    }
  }
  return m;
}

void from_matrix(const Eigen::MatrixXd& m, double* out) {
  const int dim = static_cast<int>(m.rows());
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      out[static_cast<std::size_t>(r) * dim + c] = m(r, c);
    }
  }
}

nlohmann::json parse_options(const char* options_json) {
  if (options_json == nullptr || options_json[0] == '\0') {
    return nlohmann::json::object();
  }
  return nlohmann::json::parse(options_json);
}

mccm::SimplexWeights weights_or_uniform(int n, const double* weights) {
  if (weights == nullptr) {
    return mccm::SimplexWeights::uniform(n);
  }
  return mccm::SimplexWeights(Eigen::Map<const Eigen::VectorXd>(weights, n));
}

std::vector<mccm::SpdMatrix> to_points(int dim, int n, const double* points) {
  std::vector<mccm::SpdMatrix> out;
  out.reserve(n);
  const std::size_t stride = static_cast<std::size_t>(dim) * dim;
  for (int i = 0; i < n; ++i) {
    out.push_back(mccm::SpdMatrix::checked(to_matrix(dim, points + i * stride)));
  }
  return out;
}

mccm_status make_report(nlohmann::json j, mccm_report** out) {
  *out = new mccm_report{j.dump()};
  return MCCM_OK;
}

}  // namespace

extern "C" {

const char* mccm_version(void) { return "0.1.0"; }

const char* mccm_status_name(mccm_status status) {
  switch (status) {
    case MCCM_OK:
      return "ok";
    case MCCM_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case MCCM_ERR_DIMENSION_MISMATCH:
      return "dimension-mismatch";
    case MCCM_ERR_NOT_SYMMETRIC:
      return "not-symmetric";
    case MCCM_ERR_DEGENERATE_MATRIX:
      return "degenerate-matrix";
    case MCCM_ERR_EIG_FAILED:
      return "eig-failed";
    case MCCM_ERR_MAX_ITER:
      return "max-iter-exceeded";
    case MCCM_ERR_NON_FINITE:
      return "non-finite-objective";
    case MCCM_ERR_INVALID_GRAM:
      return "invalid-gram";
    case MCCM_ERR_SOLVER_FAILED:
      return "solver-failed";
    case MCCM_ERR_RANK_DEFICIENT:
      return "rank-deficient";
    case MCCM_ERR_CONSTRUCTION_FAILED:
      return "construction-failed";
    case MCCM_ERR_PARSE:
      return "parse-error";
    case MCCM_ERR_INVALID_RECORD:
      return "invalid-record";
    case MCCM_ERR_IO:
      return "io-error";
    case MCCM_ERR_UNKNOWN:
      return "unknown";
  }
  return "unknown";
}

const char* mccm_last_error(void) { return g_last_error.c_str(); }

mccm_status mccm_dataset_create(mccm_dataset** out) {
  if (mccm_status s = require(out != nullptr, "out must not be NULL")) {
    return s;
  }
  return guarded([&] { *out = new mccm_dataset(); });
}

mccm_status mccm_dataset_load(const char* path, mccm_dataset** out) {
  if (mccm_status s = require(path != nullptr && out != nullptr,
                              "path and out must not be NULL")) {
    return s;
  }
  return guarded([&] { *out = new mccm_dataset{mccm::load_dataset(path)}; });
}

mccm_status mccm_dataset_save(const mccm_dataset* dataset, const char* path) {
  if (mccm_status s = require(dataset != nullptr && path != nullptr,
                              "dataset and path must not be NULL")) {
    return s;
  }
  return guarded([&] { mccm::save_dataset(path, dataset->records); });
}

mccm_status mccm_dataset_add(mccm_dataset* dataset, const char* label, int dim,
                             const double* matrix) {
  if (mccm_status s =
          require(dataset != nullptr && label != nullptr && matrix != nullptr,
                  "dataset, label and matrix must not be NULL")) {
    return s;
  }
  return guarded([&] {
    dataset->records.push_back(mccm::LabeledPoint{
        label, mccm::SpdMatrix::checked(to_matrix(dim, matrix))});
  });
}

size_t mccm_dataset_size(const mccm_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->records.size();
}

int mccm_dataset_dim(const mccm_dataset* dataset) {
  if (dataset == nullptr || dataset->records.empty()) {
    return 0;
  }
  return dataset->records.front().point.dim();
}

const char* mccm_dataset_label(const mccm_dataset* dataset, size_t index) {
  if (dataset == nullptr || index >= dataset->records.size()) {
    return nullptr;
  }
  return dataset->records[index].label.c_str();
}

mccm_status mccm_dataset_matrix(const mccm_dataset* dataset, size_t index,
                                double* out) {
  if (mccm_status s = require(dataset != nullptr && out != nullptr,
                              "dataset and out must not be NULL")) {
    return s;
  }
  if (mccm_status s =
          require(index < dataset->records.size(), "index out of range")) {
    return s;
  }
  from_matrix(dataset->records[index].point.mat(), out);
  return MCCM_OK;
}

void mccm_dataset_free(mccm_dataset* dataset) { delete dataset; }

mccm_status mccm_geodesic_distance(int dim, const double* x, const double* y,
                                   double* out) {
  if (mccm_status s = require(x != nullptr && y != nullptr && out != nullptr,
                              "x, y and out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    *out = mccm::geodesic_distance(mccm::SpdMatrix::checked(to_matrix(dim, x)),
                                   mccm::SpdMatrix::checked(to_matrix(dim, y)));
  });
}

mccm_status mccm_log_euclidean_distance(int dim, const double* x,
                                        const double* y, double* out) {
  if (mccm_status s = require(x != nullptr && y != nullptr && out != nullptr,
                              "x, y and out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    *out = mccm::log_euclidean_distance(
        mccm::SpdMatrix::checked(to_matrix(dim, x)),
        mccm::SpdMatrix::checked(to_matrix(dim, y)));
  });
}

mccm_status mccm_matrix_log(int dim, const double* x, double* out) {
  if (mccm_status s = require(x != nullptr && out != nullptr,
                              "x and out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    from_matrix(mccm::spd_log(mccm::SpdMatrix::checked(to_matrix(dim, x))).mat(),
                out);
  });
}

mccm_status mccm_matrix_exp(int dim, const double* x, double* out) {
  if (mccm_status s = require(x != nullptr && out != nullptr,
                              "x and out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    from_matrix(mccm::sym_exp(mccm::SymMatrix(to_matrix(dim, x))).mat(), out);
  });
}

mccm_status mccm_frechet_mean(int dim, int n, const double* points,
                              const double* weights, const char* config_json,
                              double* out) {
  if (mccm_status s = require(points != nullptr && out != nullptr && n >= 1,
                              "points and out must not be NULL, n >= 1")) {
    return s;
  }
  return guarded([&] {
    mccm::RunConfig config;
    config.apply(parse_options(config_json));
    const auto pts = to_points(dim, n, points);
    const auto mean =
        mccm::frechet_mean(pts, weights_or_uniform(n, weights), config.mean);
    from_matrix(mean.mat(), out);
  });
}

mccm_status mccm_log_euclidean_mean(int dim, int n, const double* points,
                                    const double* weights, double* out) {
  if (mccm_status s = require(points != nullptr && out != nullptr && n >= 1,
                              "points and out must not be NULL, n >= 1")) {
    return s;
  }
  return guarded([&] {
    const auto pts = to_points(dim, n, points);
    from_matrix(mccm::le_mean(pts, weights_or_uniform(n, weights)).mat(), out);
  });
}

mccm_status mccm_model_distance(const char* variant, int dim, int n,
                                const double* points, const double* query,
                                const char* config_json, double* distance_out,
                                double* weights_out) {
  if (mccm_status s = require(variant != nullptr && points != nullptr &&
                                  query != nullptr && distance_out != nullptr,
                              "variant, points, query and distance_out must "
                              "not be NULL")) {
    return s;
  }
  return guarded([&] {
    mccm::RunConfig config;
    config.apply(parse_options(config_json));
    const std::string name = variant;
    mccm::MccmVariant v;
    if (name == "fm") {
      v = mccm::MccmVariant::FM;
    } else if (name == "cs") {
      v = mccm::MccmVariant::CS;
    } else if (name == "le") {
      v = mccm::MccmVariant::LE;
    } else {
      throw mccm::Error(mccm::ErrorCode::InvalidArgument,
                        "variant must be fm, cs or le");
    }
    const mccm::ConvexClassModel model("model", to_points(dim, n, points));
    const mccm::DistanceResult r = mccm::model_distance(
        mccm::SpdMatrix::checked(to_matrix(dim, query)), model, v, config.spg);
    *distance_out = r.distance;
    if (weights_out != nullptr) {
      for (int i = 0; i < n; ++i) {
        weights_out[i] = r.weights[i];
      }
    }
  });
}

mccm_status mccm_random_spd(int dim, uint64_t seed, double condition_cap,
                            double* out) {
  if (mccm_status s = require(out != nullptr, "out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    mccm::Rng rng(seed);
    from_matrix(mccm::random_spd(dim, rng, condition_cap).mat(), out);
  });
}

mccm_status mccm_classifier_create(const mccm_dataset* train,
                                   const char* variant, const char* config_json,
                                   mccm_classifier** out) {
  if (mccm_status s = require(train != nullptr && variant != nullptr &&
                                  out != nullptr,
                              "train, variant and out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    const auto kind = mccm::classifier_kind_from_name(variant);
    if (!kind) {
      throw mccm::Error(mccm::ErrorCode::InvalidArgument,
                        std::string("unknown variant '") + variant + "'");
    }
    mccm::RunConfig config;
    config.apply(parse_options(config_json));
    *out = new mccm_classifier{
        mccm::Classifier(train->records, *kind, config.spg)};
  });
}

size_t mccm_classifier_classes(const mccm_classifier* classifier) {
  return classifier == nullptr ? 0 : classifier->impl.class_labels().size();
}

const char* mccm_classifier_class_label(const mccm_classifier* classifier,
                                        size_t index) {
  if (classifier == nullptr ||
      index >= classifier->impl.class_labels().size()) {
    return nullptr;
  }
  return classifier->impl.class_labels()[index].c_str();
}

mccm_status mccm_classifier_classify(const mccm_classifier* classifier, int dim,
                                     const double* query, char* label_buf,
                                     size_t buf_len, double* distances_out) {
  if (mccm_status s = require(classifier != nullptr && query != nullptr &&
                                  label_buf != nullptr && buf_len > 0,
                              "classifier, query and label_buf must not be "
                              "NULL; buf_len > 0")) {
    return s;
  }
  return guarded([&] {
    const mccm::Classifier::Outcome outcome = classifier->impl.classify_query(
        mccm::SpdMatrix::checked(to_matrix(dim, query)));
    std::strncpy(label_buf, outcome.label.c_str(), buf_len - 1);
    label_buf[buf_len - 1] = '\0';
    if (distances_out != nullptr) {
      for (std::size_t i = 0; i < outcome.per_class.size(); ++i) {
        distances_out[i] = outcome.per_class[i].distance;
      }
    }
  });
}

void mccm_classifier_free(mccm_classifier* classifier) { delete classifier; }

const char* mccm_report_json(const mccm_report* report) {
  return report == nullptr ? nullptr : report->text.c_str();
}

void mccm_report_free(mccm_report* report) { delete report; }

mccm_status mccm_run_classify(const char* train_path, const char* test_path,
                              const char* options_json, mccm_report** out) {
  if (mccm_status s = require(train_path != nullptr && test_path != nullptr &&
                                  out != nullptr,
                              "train_path, test_path and out must not be "
                              "NULL")) {
    return s;
  }
  return guarded([&] {
    make_report(
        mccm::run_classify(train_path, test_path, parse_options(options_json)),
        out);
  });
}

mccm_status mccm_run_benchmark(const char* train_path, const char* test_path,
                               const char* options_json, mccm_report** out) {
  if (mccm_status s = require(train_path != nullptr && test_path != nullptr &&
                                  out != nullptr,
                              "train_path, test_path and out must not be "
                              "NULL")) {
    return s;
  }
  return guarded([&] {
    make_report(
        mccm::run_benchmark(train_path, test_path, parse_options(options_json)),
        out);
  });
}

mccm_status mccm_run_synthetic(const char* options_json, mccm_report** out) {
  if (mccm_status s = require(out != nullptr, "out must not be NULL")) {
    return s;
  }
  return guarded(
      [&] { make_report(mccm::run_synthetic(parse_options(options_json)), out); });
}

mccm_status mccm_run_descriptor(const char* options_json, mccm_report** out) {
  if (mccm_status s = require(out != nullptr, "out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    make_report(mccm::run_descriptor(parse_options(options_json)), out);
  });
}

mccm_status mccm_run_generate(const char* options_json, mccm_report** out) {
  if (mccm_status s = require(out != nullptr, "out must not be NULL")) {
    return s;
  }
  return guarded(
      [&] { make_report(mccm::run_generate(parse_options(options_json)), out); });
}

}  // extern "C"
