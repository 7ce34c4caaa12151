// SPDX-License-Identifier: Apache-2.0

#include "core/synth.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <sstream>

namespace mccm {

namespace {

/// Random orthogonal matrix from the QR factorization of a Gaussian draw,
/// with the sign convention that makes the factorization unique.
Eigen::MatrixXd random_orthogonal(int dim, Rng& rng) {
  const Eigen::MatrixXd g = rng.normal_matrix(dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (int j = 0; j < dim; ++j) {
    if (diag(j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

/// Unit AIRM-norm tangent vector at the base point, uniformly oriented.
SymMatrix random_unit_tangent(const SpdMatrix& base, Rng& rng) {
  const int d = base.dim();
  for (int attempt = 0; attempt < 16; ++attempt) {
    const SymMatrix v = sym_unchecked(rng.normal_matrix(d, d));
    const double norm = airm_norm(base, v);
    if (norm > 1e-8) {
      return sym_unchecked(v.mat() / norm);
    }
  }
  throw Error(ErrorCode::ConstructionFailed,
              "random_unit_tangent: degenerate draws");
}

}  // namespace

SpdMatrix random_spd(int dim, Rng& rng, double condition_cap) {
  if (dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "random_spd: dim must be >= 1");
  }
  if (condition_cap < 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "random_spd: condition_cap must be >= 1");
  }
  const Eigen::MatrixXd q = random_orthogonal(dim, rng);
  const double half_log_cap = 0.5 * std::log(condition_cap);
  Eigen::VectorXd lambda(dim);
  for (int i = 0; i < dim; ++i) {
    lambda(i) = std::exp((2.0 * rng.uniform() - 1.0) * half_log_cap);
  }
  return SpdMatrix::unchecked(q * lambda.asDiagonal() * q.transpose());
}

EquidistantTriple equidistant_triple(int dim, Rng& rng, double tangent_norm,
                                     double condition_cap) {
  if (dim < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "equidistant_triple: dim must be >= 2");
  }
  if (tangent_norm <= 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "equidistant_triple: tangent_norm must be positive");
  }
  const SpdMatrix center = random_spd(dim, rng, condition_cap);

  // AIRM-orthonormal 2-frame at the center.
  const SymMatrix e1 = random_unit_tangent(center, rng);
  SymMatrix e2 = SymMatrix::zero(dim);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const SymMatrix raw = random_unit_tangent(center, rng);
    const double overlap = airm_inner(center, e1, raw);
    const SymMatrix ortho = sym_unchecked(raw.mat() - overlap * e1.mat());
    const double norm = airm_norm(center, ortho);
    if (norm > 1e-6) {
      e2 = sym_unchecked(ortho.mat() / norm);
      break;
    }
    if (attempt == 15) {
      throw Error(ErrorCode::ConstructionFailed,
                  "equidistant_triple: could not build a tangent 2-frame");
    }
  }

  // Equal-norm, zero-sum vectors are an equilateral arrangement in the frame.
  const double theta0 = 2.0 * std::numbers::pi * rng.uniform();
  std::array<SpdMatrix, 3> points = {SpdMatrix::identity(dim),
                                     SpdMatrix::identity(dim),
                                     SpdMatrix::identity(dim)};
  for (int i = 0; i < 3; ++i) {
    const double angle = theta0 + 2.0 * std::numbers::pi * i / 3.0;
    const SymMatrix v = sym_unchecked(
        tangent_norm *
        (std::cos(angle) * e1.mat() + std::sin(angle) * e2.mat()));
    points[i] = exp_map(center, v);
  }
  return EquidistantTriple{std::move(points), center};
}

void ErrorTrialConfig::validate() const {
  if (dim < 2) {
    throw Error(ErrorCode::InvalidArgument, "ErrorTrialConfig: dim must be >= 2");
  }
  if (trials < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "ErrorTrialConfig: trials must be >= 1");
  }
  if (multipliers.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "ErrorTrialConfig: need at least one multiplier");
  }
  for (double m : multipliers) {
    if (!(m > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "ErrorTrialConfig: multipliers must be positive");
    }
  }
  if (condition_cap < 1.0 || tangent_norm <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "ErrorTrialConfig: bad geometry");
  }
  mean.validate();
}

ErrorTable approx_error_trial(const ErrorTrialConfig& config) {
  config.validate();
  const std::size_t m_count = config.multipliers.size();

  ErrorTable table;
  table.multipliers = config.multipliers;
  table.fm_error.assign(m_count, 0.0);
  table.cs_error.assign(m_count, 0.0);
  table.le_error.assign(m_count, 0.0);
  table.mean_truth.assign(m_count, 0.0);

  // Measurement-grade solver settings; estimator bias is the quantity under
  // study, so solver error must sit well below it.
  SpgParams solver;
  solver.grad_tol = 1e-11;
  solver.max_iter = 5000;

  int successes = 0;
  for (int t = 0; t < config.trials; ++t) {
    Rng rng(Rng::derive_stream(config.seed, static_cast<std::uint64_t>(t)));
    try {
      EquidistantTriple triple = equidistant_triple(
          config.dim, rng, config.tangent_norm, config.condition_cap);
      const SpdMatrix pair_mean =
          frechet_mean({triple.points[0], triple.points[1]},
                       SimplexWeights::uniform(2), config.mean);
      const ConvexClassModel model(
          "model", {triple.points[0], triple.points[1], triple.points[2]});

      std::vector<std::array<double, 4>> rows(m_count);
      for (std::size_t k = 0; k < m_count; ++k) {
        const FactoredSpd query = factored_geodesic_point(
            triple.center, pair_mean, config.multipliers[k]);
        const double truth = factored_geodesic_distance(query, pair_mean);
        rows[k] = {std::abs(dist_fm(query, model, solver).distance - truth),
                   std::abs(dist_cs(query, model, solver).distance - truth),
                   std::abs(dist_le(query, model, solver).distance - truth),
                   truth};
      }
      for (std::size_t k = 0; k < m_count; ++k) {
        table.fm_error[k] += rows[k][0];
        table.cs_error[k] += rows[k][1];
        table.le_error[k] += rows[k][2];
        table.mean_truth[k] += rows[k][3];
      }
      ++successes;
    } catch (const Error&) {
      ++table.failures;
    }
  }

  if (successes == 0) {
    throw Error(ErrorCode::SolverFailed,
                "approx_error_trial: every trial failed");
  }
  for (std::size_t k = 0; k < m_count; ++k) {
    table.fm_error[k] /= successes;
    table.cs_error[k] /= successes;
    table.le_error[k] /= successes;
    table.mean_truth[k] /= successes;
  }
  table.trials = successes;
  return table;
}

HullVsNnCase hull_vs_nn_case(int dim, Rng& rng, int max_attempts) {
  if (dim < 2) {
    throw Error(ErrorCode::InvalidArgument, "hull_vs_nn_case: dim must be >= 2");
  }
  // Geometry: the pair class spans a long geodesic whose midpoint sits a
  // hair away from the query; the singleton sits noticeably nearer than
  // either pair vertex but farther than the pair's hull.
  constexpr double kMidOffset = 0.05;
  constexpr double kSingleton = 0.5;
  constexpr double kPairHalf = 1.5;

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const SpdMatrix query = random_spd(dim, rng, 10.0);
    const SymMatrix n1 = random_unit_tangent(query, rng);
    const SpdMatrix mid =
        exp_map(query, sym_unchecked(kMidOffset * n1.mat()));
    const SymMatrix span_dir = random_unit_tangent(mid, rng);
    const SpdMatrix a = exp_map(mid, sym_unchecked(kPairHalf * span_dir.mat()));
    const SpdMatrix b = exp_map(mid, sym_unchecked(-kPairHalf * span_dir.mat()));
    const SymMatrix p_dir = random_unit_tangent(query, rng);
    const SpdMatrix p = exp_map(query, sym_unchecked(kSingleton * p_dir.mat()));

    ConvexClassModel singleton("single", {p});
    ConvexClassModel pair("pair", {a, b});

    const double d_single = geodesic_distance(query, p);
    const double d_pair_vertices = std::min(geodesic_distance(query, a),
                                            geodesic_distance(query, b));
    const double d_fm_pair = dist_fm(query, pair).distance;
    const double d_fm_single = dist_fm(query, singleton).distance;

    if (d_single < d_pair_vertices && d_fm_pair < d_fm_single) {
      return HullVsNnCase{std::move(singleton), std::move(pair), query};
    }
  }
  std::ostringstream os;
  os << "hull_vs_nn_case: no admissible fixture after " << max_attempts
     << " attempts";
  throw Error(ErrorCode::ConstructionFailed, os.str());
}

std::vector<SpdMatrix> frechet_augment(const std::vector<SpdMatrix>& points,
                                       int count, Rng& rng,
                                       const MeanParams& params) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "frechet_augment: empty class");
  }
  if (count < 0) {
    throw Error(ErrorCode::InvalidArgument,
                "frechet_augment: count must be nonnegative");
  }
  std::vector<SpdMatrix> out;
  out.reserve(count);
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < count; ++i) {
    const SimplexWeights w(rng.simplex_uniform(n));
    out.push_back(frechet_mean(points, w, params));
  }
  return out;
}

void ClusterConfig::validate() const {
  if (classes < 1 || points_per_class < 1 || queries_per_class < 0 ||
      dim < 2 || spread <= 0.0 || separation <= 0.0 || condition_cap < 1.0) {
    throw Error(ErrorCode::InvalidArgument, "ClusterConfig: invalid settings");
  }
}

GeneratedClusters generate_clusters(const ClusterConfig& config) {
  config.validate();
  Rng rng(config.seed);

  std::vector<SpdMatrix> centers;
  for (int attempt = 0; attempt < 200 * config.classes; ++attempt) {
    const SpdMatrix candidate = random_spd(config.dim, rng, config.condition_cap);
    bool separated = true;
    for (const SpdMatrix& c : centers) {
      if (geodesic_distance(candidate, c) < config.separation) {
        separated = false;
        break;
      }
    }
    if (separated) {
      centers.push_back(candidate);
      if (static_cast<int>(centers.size()) == config.classes) {
        break;
      }
    }
  }
  if (static_cast<int>(centers.size()) < config.classes) {
    throw Error(ErrorCode::ConstructionFailed,
                "generate_clusters: could not separate class centers; lower "
                "separation or raise condition_cap");
  }

  auto draw_member = [&](const SpdMatrix& center) {
    const SymMatrix dir = random_unit_tangent(center, rng);
    const double radius = config.spread * rng.uniform();
    return exp_map(center, sym_unchecked(radius * dir.mat()));
  };

  GeneratedClusters out;
  for (int c = 0; c < config.classes; ++c) {
    const std::string label = "class-" + std::to_string(c);
    for (int i = 0; i < config.points_per_class; ++i) {
      out.train.push_back(LabeledPoint{label, draw_member(centers[c])});
    }
  }
  for (int c = 0; c < config.classes; ++c) {
    const std::string label = "class-" + std::to_string(c);
    for (int i = 0; i < config.queries_per_class; ++i) {
      out.test.push_back(LabeledPoint{label, draw_member(centers[c])});
    }
  }
  return out;
}

}  // namespace mccm
