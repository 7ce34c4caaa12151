// SPDX-License-Identifier: Apache-2.0

#include "core/runner.hpp"

#include <chrono>
#include <set>

#include "core/csv.hpp"
#include "core/dataset.hpp"
#include "core/dct.hpp"
#include "core/descriptors.hpp"
#include "core/parallel.hpp"
#include "core/run_config.hpp"
#include "core/synth.hpp"

namespace mccm {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

json dataset_summary(const std::string& path,
                     const std::vector<LabeledPoint>& data) {
  std::set<std::string> labels;
  for (const LabeledPoint& p : data) {
    labels.insert(p.label);
  }
  json j;
  j["path"] = path;
  j["points"] = data.size();
  j["classes"] = labels.size();
  if (!data.empty()) {
    j["dim"] = data.front().point.dim();
  }
  return j;
}

ClassifierKind parse_kind(const json& options, const char* key,
                          const std::string& fallback) {
  const std::string name = options.value(key, fallback);
  const auto kind = classifier_kind_from_name(name);
  if (!kind) {
    throw Error(ErrorCode::InvalidArgument,
                "unknown variant '" + name +
                    "' (expected fm, cs, le, geo-nn or euclid-hull)");
  }
  return *kind;
}

struct QueryRecord {
  Classifier::Outcome outcome;
  double ms = 0.0;
};

std::vector<QueryRecord> classify_all(const Classifier& classifier,
                                       const std::vector<LabeledPoint>& test,
                                       int threads) {
  std::vector<QueryRecord> records(test.size());
  parallel_for(static_cast<int>(test.size()), threads, [&](int i) {
    const auto start = Clock::now();
    records[i].outcome = classifier.classify_query(test[i].point);
    records[i].ms = ms_since(start);
  });
  return records;
}

json query_report(const std::vector<LabeledPoint>& test,
                  const std::vector<QueryRecord>& records,
                  bool include_weights, int* correct_out) {
  json queries = json::array();
  int correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const QueryRecord& r = records[i];
    json q;
    q["index"] = i;
    q["label"] = test[i].label;
    q["predicted"] = r.outcome.label;
    const bool ok = r.outcome.label == test[i].label;
    q["correct"] = ok;
    correct += ok ? 1 : 0;
    json distances = json::object();
    for (const Classifier::PerClass& pc : r.outcome.per_class) {
      distances[pc.label] = pc.distance;
    }
    q["distances"] = std::move(distances);
    if (include_weights) {
      json weights = json::object();
      for (const Classifier::PerClass& pc : r.outcome.per_class) {
        weights[pc.label] =
            std::vector<double>(pc.weights.data(),
                                pc.weights.data() + pc.weights.size());
      }
      q["weights"] = std::move(weights);
    }
    q["ms"] = r.ms;
    queries.push_back(std::move(q));
  }
  *correct_out = correct;
  return queries;
}

}  // namespace

json run_classify(const std::string& train_path, const std::string& test_path,
                  const json& options) {
  RunConfig config;
  config.apply(options);
  const ClassifierKind kind = parse_kind(options, "variant", "fm");

  std::vector<LabeledPoint> train = load_dataset(train_path);
  std::vector<LabeledPoint> test = load_dataset(test_path);
  if (train.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "classify: training dataset is empty");
  }

  const auto total_start = Clock::now();
  Classifier classifier(train, kind, config.spg);
  const std::vector<QueryRecord> records =
      classify_all(classifier, test, config.threads);
  const double total_ms = ms_since(total_start);

  int correct = 0;
  json queries =
      query_report(test, records, config.include_weights, &correct);

  json report;
  report["schema"] = 1;
  report["command"] = "classify";
  report["variant"] = classifier_kind_name(kind);
  report["train"] = dataset_summary(train_path, train);
  report["test"] = dataset_summary(test_path, test);
  report["queries"] = std::move(queries);
  report["correct"] = correct;
  report["total"] = test.size();
  report["accuracy"] =
      test.empty() ? 0.0 : static_cast<double>(correct) / test.size();
  report["total_ms"] = total_ms;
  report["per_query_ms"] = test.empty() ? 0.0 : total_ms / test.size();
  report["threads"] = config.threads;
  report["seed"] = config.seed;
  return report;
}

json run_benchmark(const std::string& train_path, const std::string& test_path,
                   const json& options) {
  RunConfig config;
  config.apply(options);

  std::vector<std::string> variant_names = {"fm", "cs", "le"};
  if (options.contains("variants")) {
    variant_names = options.at("variants").get<std::vector<std::string>>();
  }
  std::vector<ClassifierKind> kinds;
  for (const std::string& name : variant_names) {
    const auto kind = classifier_kind_from_name(name);
    if (!kind) {
      throw Error(ErrorCode::InvalidArgument,
                  "benchmark: unknown variant '" + name + "'");
    }
    kinds.push_back(*kind);
  }
  if (kinds.empty()) {
    throw Error(ErrorCode::InvalidArgument, "benchmark: no variants");
  }

  std::vector<LabeledPoint> train = load_dataset(train_path);
  std::vector<LabeledPoint> test = load_dataset(test_path);
  if (train.empty() || test.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "benchmark: need nonempty train and test datasets");
  }

  json entries = json::array();
  for (std::size_t v = 0; v < kinds.size(); ++v) {
    const auto total_start = Clock::now();
    Classifier classifier(train, kinds[v], config.spg);
    const std::vector<QueryRecord> records =
        classify_all(classifier, test, config.threads);
    const double total_ms = ms_since(total_start);

    int correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      correct += records[i].outcome.label == test[i].label ? 1 : 0;
    }
    json entry;
    entry["variant"] = variant_names[v];
    entry["total_ms"] = total_ms;
    entry["per_query_ms"] = total_ms / test.size();
    entry["accuracy"] = static_cast<double>(correct) / test.size();
    entries.push_back(std::move(entry));
  }

  json report;
  report["schema"] = 1;
  report["command"] = "benchmark";
  report["train"] = dataset_summary(train_path, train);
  report["test"] = dataset_summary(test_path, test);
  report["entries"] = std::move(entries);
  report["threads"] = config.threads;
  return report;
}

json run_synthetic(const json& options) {
  RunConfig config;
  config.apply(options);

  ErrorTrialConfig trial;
  trial.seed = config.seed;
  trial.mean = config.mean;
  trial.dim = options.value("dim", trial.dim);
  trial.trials = options.value("trials", trial.trials);
  trial.condition_cap = options.value("condition_cap", trial.condition_cap);
  trial.tangent_norm = options.value("tangent_norm", trial.tangent_norm);
  if (options.contains("multipliers")) {
    trial.multipliers = options.at("multipliers").get<std::vector<double>>();
  }

  const auto start = Clock::now();
  const ErrorTable table = approx_error_trial(trial);
  const double total_ms = ms_since(start);

  json report;
  report["schema"] = 1;
  report["command"] = "synthetic";
  report["config"] = {{"dim", trial.dim},
                      {"trials", trial.trials},
                      {"multipliers", trial.multipliers},
                      {"seed", trial.seed},
                      {"condition_cap", trial.condition_cap},
                      {"tangent_norm", trial.tangent_norm}};
  report["table"] = {{"multipliers", table.multipliers},
                     {"fm", table.fm_error},
                     {"cs", table.cs_error},
                     {"le", table.le_error},
                     {"mean_truth", table.mean_truth}};
  report["trials"] = table.trials;
  report["failures"] = table.failures;
  report["total_ms"] = total_ms;
  return report;
}

namespace {

Eigen::MatrixXd preprocess_frame(Eigen::MatrixXd frame, const json& options) {
  if (options.contains("resize")) {
    const auto target = options.at("resize").get<std::vector<int>>();
    if (target.size() != 2) {
      throw Error(ErrorCode::InvalidArgument,
                  "descriptor: resize expects [rows, cols]");
    }
    frame = resize_bilinear(frame, target[0], target[1]);
  }
  return frame;
}

SpdMatrix table_to_descriptor(const FeatureTable& table, double ridge,
                              std::vector<double>* ridges_used) {
  const double effective =
      ridge >= 0.0 ? ridge : suggested_ridge(sample_covariance(table));
  ridges_used->push_back(effective);
  return covariance_descriptor(table, effective);
}

}  // namespace

json run_descriptor(const json& options) {
  RunConfig config;
  config.apply(options);

  const std::string input = options.value("input", "");
  const std::string out_path = options.value("out", "");
  const std::string recipe = options.value("recipe", "");
  const std::string label = options.value("label", "sample");
  if (input.empty() || out_path.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "descriptor: 'input' and 'out' paths are required");
  }

  std::vector<Eigen::MatrixXd> blocks = read_csv_blocks(input);
  if (blocks.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "descriptor: no data blocks in " + input);
  }

  std::vector<LabeledPoint> records;
  std::vector<double> ridges_used;

  if (recipe == "covariance") {
    for (Eigen::MatrixXd& block : blocks) {
      FeatureTable table(std::move(block), input);
      records.push_back(LabeledPoint{
          label, table_to_descriptor(table, config.ridge, &ridges_used)});
    }
  } else if (recipe == "brodatz") {
    for (Eigen::MatrixXd& block : blocks) {
      FeatureTable table = brodatz_pixel_features(block);
      records.push_back(LabeledPoint{
          label, table_to_descriptor(table, config.ridge, &ridges_used)});
    }
  } else if (recipe == "ethz") {
    if (blocks.size() % 3 != 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "descriptor: ethz recipe needs blocks in R,G,B triples");
    }
    for (std::size_t i = 0; i < blocks.size(); i += 3) {
      FeatureTable table =
          ethz_pixel_features(blocks[i], blocks[i + 1], blocks[i + 2]);
      records.push_back(LabeledPoint{
          label, table_to_descriptor(table, config.ridge, &ridges_used)});
    }
  } else if (recipe == "dct-set") {
    const int k = options.value("dct_k", 80);
    const bool center = options.value("center", false);
    const bool scale = options.value("scale", false);
    std::vector<Eigen::MatrixXd> frames;
    frames.reserve(blocks.size());
    for (Eigen::MatrixXd& block : blocks) {
      frames.push_back(preprocess_frame(std::move(block), options));
    }
    if (center || scale) {
      Eigen::MatrixXd mean_frame =
          Eigen::MatrixXd::Zero(frames.front().rows(), frames.front().cols());
      for (const Eigen::MatrixXd& f : frames) {
        if (f.rows() != mean_frame.rows() || f.cols() != mean_frame.cols()) {
          throw Error(ErrorCode::DimensionMismatch,
                      "descriptor: frames must share the grid size");
        }
        mean_frame += f;
      }
      mean_frame /= static_cast<double>(frames.size());
      double variance = 0.0;
      for (Eigen::MatrixXd& f : frames) {
        if (center) {
          f -= mean_frame;
        }
        variance += f.squaredNorm();
      }
      variance /= static_cast<double>(frames.size()) * mean_frame.size();
      if (scale && variance > 0.0) {
        for (Eigen::MatrixXd& f : frames) {
          f /= variance;
        }
      }
    }
    Eigen::MatrixXd table_rows(frames.size(), k);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      table_rows.row(static_cast<int>(i)) = dct_features(frames[i], k);
    }
    FeatureTable table(std::move(table_rows), input);
    records.push_back(LabeledPoint{
        label, table_to_descriptor(table, config.ridge, &ridges_used)});
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "descriptor: unknown recipe '" + recipe +
                    "' (expected covariance, brodatz, ethz or dct-set)");
  }

  save_dataset(out_path, records);

  json report;
  report["schema"] = 1;
  report["command"] = "descriptor";
  report["recipe"] = recipe;
  report["input"] = input;
  report["out"] = out_path;
  report["records"] = records.size();
  report["dim"] = records.front().point.dim();
  report["label"] = label;
  report["ridges"] = ridges_used;
  return report;
}

json run_generate(const json& options) {
  RunConfig config;
  config.apply(options);
  const std::string kind = options.value("kind", "clusters");
  const std::string out_train = options.value("out_train", "");
  const std::string out_test = options.value("out_test", "");
  if (out_train.empty() || out_test.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "generate: 'out_train' and 'out_test' paths are required");
  }

  json report;
  report["schema"] = 1;
  report["command"] = "generate";
  report["kind"] = kind;
  report["out_train"] = out_train;
  report["out_test"] = out_test;
  report["seed"] = config.seed;

  if (kind == "clusters" || kind == "benchmark") {
    ClusterConfig cluster;
    cluster.seed = config.seed;
    if (kind == "benchmark") {
      // Timing-comparison shape: 3 classes x 10 points at dim 20, 60 queries.
      cluster.classes = 3;
      cluster.points_per_class = 10;
      cluster.queries_per_class = 20;
      cluster.dim = 20;
    }
    cluster.classes = options.value("classes", cluster.classes);
    cluster.points_per_class = options.value("points", cluster.points_per_class);
    cluster.queries_per_class =
        options.value("queries", cluster.queries_per_class);
    cluster.dim = options.value("dim", cluster.dim);
    cluster.spread = options.value("spread", cluster.spread);
    cluster.separation = options.value("separation", cluster.separation);
    cluster.condition_cap =
        options.value("condition_cap", cluster.condition_cap);

    GeneratedClusters data = generate_clusters(cluster);
    save_dataset(out_train, data.train);
    save_dataset(out_test, data.test);
    report["classes"] = cluster.classes;
    report["dim"] = cluster.dim;
    report["train_points"] = data.train.size();
    report["test_points"] = data.test.size();
  } else if (kind == "hull-vs-nn") {
    const int dim = options.value("dim", 5);
    Rng rng(config.seed);
    HullVsNnCase fixture = hull_vs_nn_case(dim, rng);
    std::vector<LabeledPoint> train;
    train.push_back(LabeledPoint{fixture.singleton_class.label(),
                                 fixture.singleton_class.points()[0]});
    for (const SpdMatrix& p : fixture.pair_class.points()) {
      train.push_back(LabeledPoint{fixture.pair_class.label(), p});
    }
    // The fixture is built so the convex-model classifier assigns the query
    // to the pair class while nearest neighbor does not.
    std::vector<LabeledPoint> test = {
        LabeledPoint{fixture.pair_class.label(), fixture.query}};
    save_dataset(out_train, train);
    save_dataset(out_test, test);
    report["dim"] = dim;
    report["train_points"] = train.size();
    report["test_points"] = test.size();
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "generate: unknown kind '" + kind +
                    "' (expected clusters, benchmark or hull-vs-nn)");
  }
  return report;
}

}  // namespace mccm
