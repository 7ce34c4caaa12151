// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>

#include "core/factored.hpp"
#include "core/geometry.hpp"
#include "support.hpp"

using namespace mccm;

TEST_CASE("one-sided Jacobi SVD matches Eigen on random matrices") {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 3 + static_cast<int>(rng.uniform() * 6);
    const int cols = 2 + static_cast<int>(rng.uniform() * 4);
    if (rows < cols) {
      continue;
    }
    const Eigen::MatrixXd a = rng.normal_matrix(rows, cols);
    const ColumnJacobiSvd svd = one_sided_jacobi_svd(a);
    Eigen::JacobiSVD<Eigen::MatrixXd> ref(a);
    Eigen::VectorXd ref_asc = ref.singularValues().reverse();
    CHECK((svd.sigma - ref_asc).norm() <= 1e-12 * (1.0 + ref_asc.norm()));
    // Residual a = (U sigma) V^T.
    CHECK((svd.scaled_left * svd.right.transpose() - a).norm() <=
          1e-12 * (1.0 + a.norm()));
    CHECK((svd.right.transpose() * svd.right -
           Eigen::MatrixXd::Identity(cols, cols))
              .norm() <= 1e-13 * cols);
  }
}

TEST_CASE("graded eig agrees with dense eig at mild scaling") {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 4;
    const Eigen::MatrixXd w = rng.normal_matrix(d, d) +
                              3.0 * Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd scale(d);
    for (int i = 0; i < d; ++i) {
      scale(i) = rng.normal();  // e^{|s|<~3}
    }

    const GradedEig graded = eig_of_gram_rowscaled(w, scale);
    const Eigen::MatrixXd g = scale.array().exp().matrix().asDiagonal() * w;
    const EigenPair dense = sym_eig(Eigen::MatrixXd(g * g.transpose()));
    for (int i = 0; i < d; ++i) {
      CHECK(graded.log_values(i) ==
            doctest::Approx(std::log(dense.values(i))).epsilon(1e-9));
    }
    const SymMatrix log_graded = log_from_graded(graded);
    const Eigen::MatrixXd log_dense =
        dense.vectors *
        dense.values.array().log().matrix().asDiagonal() *
        dense.vectors.transpose();
    CHECK((log_graded.mat() - log_dense).norm() <= 1e-9 * (1.0 + log_dense.norm()));
  }
}

TEST_CASE("graded eig survives extreme scaling (diagonal closed form)") {
  // W = I makes G G^T diagonal with eigenvalues e^{2 s_i}; materialized
  // doubles could not even store this matrix.
  const int d = 5;
  Eigen::VectorXd scale(d);
  scale << -120.0, -60.0, 0.0, 55.0, 130.0;
  const GradedEig eig =
      eig_of_gram_rowscaled(Eigen::MatrixXd::Identity(d, d), scale);
  Eigen::VectorXd expected = 2.0 * scale;
  std::sort(expected.data(), expected.data() + d);
  for (int i = 0; i < d; ++i) {
    CHECK(eig.log_values(i) == doctest::Approx(expected(i)).epsilon(1e-14));
  }
}

TEST_CASE("rank-deficient factors are rejected") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 0) = 1.0;  // two zero columns
  CHECK_THROWS_AS(eig_of_gram_rowscaled(w, Eigen::VectorXd::Zero(3)), Error);
}

TEST_CASE("factored geodesic point matches the dense one at mild t") {
  Rng rng(107);
  for (int trial = 0; trial < 15; ++trial) {
    const SpdMatrix x = test::random_spd_gram(rng, 4);
    const SpdMatrix y = test::random_spd_gram(rng, 4);
    for (double t : {0.0, 0.5, 1.0, 2.0, -1.0}) {
      const FactoredSpd factored = factored_geodesic_point(x, y, t);
      const SpdMatrix dense = geodesic_point(x, y, t);
      CHECK((factored.materialize().mat() - dense.mat()).norm() <=
            1e-9 * (1.0 + dense.mat().norm()));
    }
  }
}

TEST_CASE("factored distance and log match dense versions at mild scale") {
  Rng rng(109);
  for (int trial = 0; trial < 15; ++trial) {
    const SpdMatrix x = test::random_spd_gram(rng, 4);
    const SpdMatrix y = test::random_spd_gram(rng, 4);
    const SpdMatrix z = test::random_spd_gram(rng, 4);
    const FactoredSpd q = factored_geodesic_point(x, y, 1.5);
    const SpdMatrix q_dense = geodesic_point(x, y, 1.5);

    CHECK(factored_geodesic_distance(q, z) ==
          doctest::Approx(geodesic_distance(q_dense, z)).epsilon(1e-9));

    CHECK((q.log().mat() - spd_log(q_dense).mat()).norm() <= 1e-8);

    const Eigen::MatrixXd inv_sqrt = spd_inv_sqrt(q_dense).mat();
    const Eigen::MatrixXd dense_whitened_log =
        spd_log(SpdMatrix::unchecked(inv_sqrt * z.mat() * inv_sqrt)).mat();
    const Eigen::MatrixXd factored_log = factored_whitened_log(q, z).mat();
    // The two logs differ by an orthogonal similarity; their spectra and
    // norms agree.
    CHECK(factored_log.norm() ==
          doctest::Approx(dense_whitened_log.norm()).epsilon(1e-9));
    CHECK(factored_log.trace() ==
          doctest::Approx(dense_whitened_log.trace()).epsilon(1e-9));
  }
}

TEST_CASE("factored extrapolation matches the geodesic closed form far out") {
  // d(gamma(t), gamma(1)) = |t - 1| d(X, Y) exactly along a geodesic; at
  // t = 200 the materialized point would have condition number far beyond
  // double precision for spread-out inputs.
  Rng rng(113);
  const SpdMatrix x = test::random_spd_gram(rng, 5);
  const SpdMatrix y = test::random_spd_gram(rng, 5);
  const double dxy = geodesic_distance(x, y);
  for (double t : {10.0, 50.0, 200.0}) {
    const FactoredSpd q = factored_geodesic_point(x, y, t);
    CHECK(factored_geodesic_distance(q, y) ==
          doctest::Approx((t - 1.0) * dxy).epsilon(1e-10));
    CHECK(factored_geodesic_distance(q, x) ==
          doctest::Approx(t * dxy).epsilon(1e-10));
  }
}
