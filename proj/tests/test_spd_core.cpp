// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/geometry.hpp"
#include "support.hpp"

using namespace mccm;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("sym_eig on identity and diagonals") {
  const EigenPair id = sym_eig(Eigen::MatrixXd::Identity(2, 2));
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));
  CHECK((id.vectors.transpose() * id.vectors -
         Eigen::MatrixXd::Identity(2, 2))
            .norm() < 1e-12);

  const EigenPair diag = sym_eig(mat2(3, 0, 0, 1));
  CHECK(diag.values(0) == doctest::Approx(1.0));
  CHECK(diag.values(1) == doctest::Approx(3.0));

  // [[2,1],[1,2]]: characteristic polynomial (2-x)^2 - 1 => 1, 3.
  const EigenPair hand = sym_eig(mat2(2, 1, 1, 2));
  CHECK(hand.values(0) == doctest::Approx(1.0));
  CHECK(hand.values(1) == doctest::Approx(3.0));
}

TEST_CASE("sym_eig reconstruction invariant on random symmetric matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 7);
    const SymMatrix a = test::random_sym(rng, d);
    const EigenPair eig = sym_eig(a);
    const Eigen::MatrixXd rebuilt =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((rebuilt - a.mat()).norm() <= kEigTol * std::max(1.0, a.mat().norm()));
    CHECK((eig.vectors.transpose() * eig.vectors -
           Eigen::MatrixXd::Identity(d, d))
              .norm() <= kEigTol * d);
    for (int i = 1; i < d; ++i) {
      CHECK(eig.values(i - 1) <= eig.values(i));
    }
  }
}

TEST_CASE("matrix functions on eigenvalues") {
  const SpdMatrix id = SpdMatrix::identity(3);
  CHECK(spd_log(id).mat().norm() == doctest::Approx(0.0));

  Eigen::VectorXd diag(2);
  diag << 4.0, 9.0;
  const SpdMatrix d49 = SpdMatrix::diagonal(diag);
  const Eigen::MatrixXd root = spd_sqrt(d49).mat();
  CHECK(root(0, 0) == doctest::Approx(2.0));
  CHECK(root(1, 1) == doctest::Approx(3.0));
  CHECK(root(0, 1) == doctest::Approx(0.0));

  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const SpdMatrix x = test::random_spd_gram(rng, 4);
    const SpdMatrix roundtrip = sym_exp(spd_log(x));
    CHECK((roundtrip.mat() - x.mat()).norm() <=
          1e-10 * std::max(1.0, x.mat().norm()));
  }

  const SpdMatrix inv = spd_inv(d49);
  CHECK(inv.mat()(0, 0) == doctest::Approx(0.25));
  const SpdMatrix inv_root = spd_inv_sqrt(d49);
  CHECK(inv_root.mat()(1, 1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("construction validation") {
  // Asymmetric beyond tolerance is rejected.
  CHECK_THROWS_AS((void)SymMatrix(mat2(1, 0.5, 0.2, 1)), Error);
  CHECK_THROWS_AS((void)SpdMatrix::checked(mat2(1, 0.5, 0.2, 1)), Error);

  // Tiny asymmetry is symmetrized away.
  const SymMatrix near_sym = SymMatrix(mat2(1, 0.5 + 1e-12, 0.5, 1));
  CHECK(near_sym.mat()(0, 1) == doctest::Approx(near_sym.mat()(1, 0)));

  // Indefinite and singular matrices fail the checked constructor.
  CHECK_THROWS_AS((void)SpdMatrix::checked(mat2(1, 0, 0, -1)), Error);
  CHECK_THROWS_AS((void)SpdMatrix::checked(mat2(1, 1, 1, 1)), Error);

  try {
    (void)SpdMatrix::checked(mat2(1, 0, 0, -2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMatrix);
  }

  // Degenerate input to log is rejected with DegenerateMatrix.
  const SpdMatrix nearly_singular = SpdMatrix::unchecked(mat2(1, 0, 0, 1e-15));
  CHECK_THROWS_AS((void)spd_log(nearly_singular), Error);
}

TEST_CASE("airm inner product") {
  const SpdMatrix id = SpdMatrix::identity(2);
  const SymMatrix x = SymMatrix(mat2(1, 2, 2, -1));
  const SymMatrix z = SymMatrix(mat2(0, 1, 1, 3));
  CHECK(airm_inner(id, x, z) ==
        doctest::Approx((x.mat() * z.mat()).trace()));

  // At Y = 2I the metric scales by 1/4: <I, I>_Y = Tr(I/4) = d/4.
  const SpdMatrix two_i = SpdMatrix::unchecked(2.0 * Eigen::MatrixXd::Identity(2, 2));
  const SymMatrix eye = SymMatrix(Eigen::MatrixXd::Identity(2, 2));
  CHECK(airm_inner(two_i, eye, eye) == doctest::Approx(0.5));

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix y = test::random_spd_gram(rng, 3);
    const SymMatrix v = test::random_sym(rng, 3);
    const SymMatrix w = test::random_sym(rng, 3);
    CHECK(airm_inner(y, v, w) == doctest::Approx(airm_inner(y, w, v)));
    CHECK(airm_inner(y, v, v) >= 0.0);
  }
  CHECK(airm_inner(id, SymMatrix::zero(2), SymMatrix::zero(2)) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(airm_inner(id, SymMatrix::zero(3), SymMatrix::zero(2)),
                  Error);
}

TEST_CASE("exp_map and log_map") {
  Rng rng(19);
  const SpdMatrix y = test::random_spd_gram(rng, 4);

  CHECK((exp_map(y, SymMatrix::zero(4)).mat() - y.mat()).norm() < 1e-12);

  const SymMatrix z = test::random_sym(rng, 4, 0.7);
  const SpdMatrix from_identity = exp_map(SpdMatrix::identity(4), z);
  CHECK((from_identity.mat() - sym_exp(z).mat()).norm() < 1e-11);

  CHECK(log_map(y, y).norm() < 1e-10);

  const SpdMatrix zmat = test::random_spd_gram(rng, 4);
  const SymMatrix log_at_identity = log_map(SpdMatrix::identity(4), zmat);
  CHECK((log_at_identity.mat() - spd_log(zmat).mat()).norm() < 1e-11);

  for (int trial = 0; trial < 30; ++trial) {
    const SpdMatrix base = test::random_spd_gram(rng, 3);
    const SpdMatrix target = test::random_spd_gram(rng, 3);
    const SpdMatrix roundtrip = exp_map(base, log_map(base, target));
    CHECK((roundtrip.mat() - target.mat()).norm() <=
          1e-9 * std::max(1.0, target.mat().norm()));

    const SymMatrix s = test::random_sym(rng, 3, 0.5);
    const SymMatrix back = log_map(base, exp_map(base, s));
    CHECK((back.mat() - s.mat()).norm() <= 1e-9 * std::max(1.0, s.norm()));

    // ||log_map(Y, Z)||_Y equals the geodesic distance.
    CHECK(airm_norm(base, log_map(base, target)) ==
          doctest::Approx(geodesic_distance(base, target)).epsilon(1e-9));
  }
}

TEST_CASE("geodesic distance closed forms") {
  Rng rng(23);
  const SpdMatrix x = test::random_spd_gram(rng, 3);
  CHECK(geodesic_distance(x, x) == doctest::Approx(0.0).epsilon(1e-12));

  const SpdMatrix id = SpdMatrix::identity(2);
  const SpdMatrix e_id =
      SpdMatrix::unchecked(std::exp(1.0) * Eigen::MatrixXd::Identity(2, 2));
  CHECK(geodesic_distance(id, e_id) == doctest::Approx(std::sqrt(2.0)));

  Eigen::VectorXd d14(2), d41(2);
  d14 << 1, 4;
  d41 << 4, 1;
  const double expected = std::sqrt(2.0) * std::log(4.0);
  CHECK(geodesic_distance(SpdMatrix::diagonal(d14), SpdMatrix::diagonal(d41)) ==
        doctest::Approx(expected));
  CHECK(log_euclidean_distance(SpdMatrix::diagonal(d14),
                               SpdMatrix::diagonal(d41)) ==
        doctest::Approx(expected));
}

TEST_CASE("log-Euclidean distance properties") {
  Rng rng(29);
  const SpdMatrix x = test::random_spd_gram(rng, 4);
  CHECK(log_euclidean_distance(x, x) == doctest::Approx(0.0));

  const SymMatrix z = test::random_sym(rng, 4, 0.6);
  CHECK(log_euclidean_distance(SpdMatrix::identity(4), sym_exp(z)) ==
        doctest::Approx(z.norm()).epsilon(1e-10));
}

TEST_CASE("vectorize_symmetric") {
  const SymMatrix a = SymMatrix(mat2(3, 5, 5, 7));
  const Eigen::VectorXd v = vectorize_symmetric(a);
  REQUIRE(v.size() == 3);
  CHECK(v(0) == doctest::Approx(3.0));
  CHECK(v(1) == doctest::Approx(std::sqrt(2.0) * 5.0));
  CHECK(v(2) == doctest::Approx(7.0));

  CHECK(vectorize_symmetric(SymMatrix::zero(3)).norm() == doctest::Approx(0.0));

  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const SymMatrix s = test::random_sym(rng, 5);
    const SymMatrix t = test::random_sym(rng, 5);
    CHECK(vectorize_symmetric(s).norm() ==
          doctest::Approx(s.norm()).epsilon(1e-12));
    CHECK(vectorize_symmetric(s).dot(vectorize_symmetric(t)) ==
          doctest::Approx((s.mat() * t.mat()).trace()).epsilon(1e-12));
  }
}

TEST_CASE("geodesic_point") {
  Rng rng(37);
  const SpdMatrix x = test::random_spd_gram(rng, 3);
  const SpdMatrix y = test::random_spd_gram(rng, 3);

  CHECK((geodesic_point(x, y, 0.0).mat() - x.mat()).norm() < 1e-10);
  CHECK((geodesic_point(x, y, 1.0).mat() - y.mat()).norm() < 1e-9);

  const SpdMatrix id = SpdMatrix::identity(2);
  const SpdMatrix e2 =
      SpdMatrix::unchecked(std::exp(2.0) * Eigen::MatrixXd::Identity(2, 2));
  const SpdMatrix mid = geodesic_point(id, e2, 0.5);
  CHECK((mid.mat() - std::exp(1.0) * Eigen::MatrixXd::Identity(2, 2)).norm() <
        1e-10);

  // d(X, gamma(t)) = |t| d(X, Y), including extrapolation.
  const double dxy = geodesic_distance(x, y);
  for (double t : {0.25, 0.75, 1.5, -0.5}) {
    CHECK(geodesic_distance(x, geodesic_point(x, y, t)) ==
          doctest::Approx(std::abs(t) * dxy).epsilon(1e-8));
  }
}

TEST_CASE("affine invariance of the geodesic distance") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 4);
    const SpdMatrix x = test::random_spd_gram(rng, d);
    const SpdMatrix y = test::random_spd_gram(rng, d);
    const Eigen::MatrixXd a = test::random_invertible(rng, d);
    const double base = geodesic_distance(x, y);
    const double mapped = geodesic_distance(
        SpdMatrix::unchecked(a * x.mat() * a.transpose()),
        SpdMatrix::unchecked(a * y.mat() * a.transpose()));
    CHECK(std::abs(base - mapped) <= 1e-8 * (1.0 + base));
  }
}

TEST_CASE("metric axioms on random triples") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const SpdMatrix x = test::random_spd_gram(rng, 3);
    const SpdMatrix y = test::random_spd_gram(rng, 3);
    const SpdMatrix z = test::random_spd_gram(rng, 3);
    const double dxy = geodesic_distance(x, y);
    const double dyx = geodesic_distance(y, x);
    CHECK(dxy >= 0.0);
    CHECK(dxy == doctest::Approx(dyx).epsilon(1e-10));
    CHECK(geodesic_distance(x, z) <=
          dxy + geodesic_distance(y, z) + 1e-9);
  }
}

TEST_CASE("commuting pairs: geodesic equals log-Euclidean") {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform() * 4);
    // Simultaneously diagonalizable pair: share the eigenbasis.
    const EigenPair basis = sym_eig(test::random_sym(rng, d));
    Eigen::VectorXd lx(d), ly(d);
    for (int i = 0; i < d; ++i) {
      lx(i) = std::exp(rng.normal());
      ly(i) = std::exp(rng.normal());
    }
    const SpdMatrix x = SpdMatrix::unchecked(
        basis.vectors * lx.asDiagonal() * basis.vectors.transpose());
    const SpdMatrix y = SpdMatrix::unchecked(
        basis.vectors * ly.asDiagonal() * basis.vectors.transpose());
    CHECK(std::abs(geodesic_distance(x, y) - log_euclidean_distance(x, y)) <=
          1e-9 * (1.0 + geodesic_distance(x, y)));
  }
}
