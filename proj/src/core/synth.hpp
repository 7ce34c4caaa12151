// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_SYNTH_HPP
#define MCCM_CORE_SYNTH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "core/classifier.hpp"
#include "core/frechet.hpp"
#include "core/rng.hpp"

namespace mccm {

/// Random SPD matrix Q Lambda Q^T with a seeded random orthogonal Q and
/// log-uniform eigenvalues whose ratio stays within condition_cap.
/// Deterministic for a fixed rng state.
SpdMatrix random_spd(int dim, Rng& rng, double condition_cap);

/// Three points at equal geodesic distance from a common center, built from
/// equal-norm tangent vectors that sum to zero, so the center satisfies the
/// equal-weight first-order mean condition exactly.
struct EquidistantTriple {
  std::array<SpdMatrix, 3> points;
  SpdMatrix center;
};

EquidistantTriple equidistant_triple(int dim, Rng& rng, double tangent_norm,
                                     double condition_cap);

/// Configuration of the approximation-error study.
///
/// The declared defaults are desk-scale: at tangent_norm 0.015 and
/// condition_cap 10 the three estimators sit in their asymptotic regimes
/// at every multiplier while the farthest query (200x) stays well inside
/// double range for the factored evaluation path.
struct ErrorTrialConfig {
  int dim = 5;
  int trials = 50;
  std::vector<double> multipliers = {5.0, 10.0, 100.0, 200.0};
  std::uint64_t seed = 42;
  double condition_cap = 10.0;
  double tangent_norm = 0.015;
  MeanParams mean;

  void validate() const;
};

/// Mean absolute error of each variant at each multiplier.
struct ErrorTable {
  std::vector<double> multipliers;
  std::vector<double> fm_error;
  std::vector<double> cs_error;
  std::vector<double> le_error;
  std::vector<double> mean_truth;  // average true distance per multiplier
  int trials = 0;
  int failures = 0;
};

/// Runs the error study: per trial, an equidistant triple defines the model;
/// the query moves along the geodesic through the two-point mean, that mean
/// being the known nearest model point; each variant's distance estimate is
/// compared against the true geodesic distance.  Queries are evaluated
/// through the factored solver path, which remains accurate at extreme
/// multipliers.  Deterministic per seed (per-trial derived streams).
ErrorTable approx_error_trial(const ErrorTrialConfig& config);

/// Two-class fixture on which geodesic nearest neighbor and the FM model
/// distance provably disagree: the singleton class holds the geodesically
/// nearest training point, while the pair class's convex model passes close
/// to the query.
struct HullVsNnCase {
  ConvexClassModel singleton_class;  // label "single"
  ConvexClassModel pair_class;       // label "pair"
  SpdMatrix query;
};

HullVsNnCase hull_vs_nn_case(int dim, Rng& rng, int max_attempts = 64);

/// Random weighted Fréchet means of the class points (flat Dirichlet
/// weights); the augmentation used to densify training sets for
/// nearest-neighbor classification.
std::vector<SpdMatrix> frechet_augment(const std::vector<SpdMatrix>& points,
                                       int count, Rng& rng,
                                       const MeanParams& params = {});

/// Well-separated labeled clusters for end-to-end classification runs.
struct ClusterConfig {
  int classes = 3;
  int points_per_class = 10;
  int queries_per_class = 5;
  int dim = 5;
  double spread = 0.05;      // max tangent norm around each center
  double separation = 1.0;   // min pairwise center distance
  double condition_cap = 100.0;
  std::uint64_t seed = 42;

  void validate() const;
};

struct GeneratedClusters {
  std::vector<LabeledPoint> train;
  std::vector<LabeledPoint> test;
};

GeneratedClusters generate_clusters(const ClusterConfig& config);

}  // namespace mccm

#endif  // MCCM_CORE_SYNTH_HPP
