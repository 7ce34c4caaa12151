// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "core/qp.hpp"
#include "core/rng.hpp"

using namespace mccm;

namespace {

/// Exhaustive-KKT projection oracle: tries every support subset, keeps the
/// feasible candidate whose multipliers certify optimality.
Eigen::VectorXd project_simplex_oracle(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        support.push_back(i);
      }
    }
    double sum = 0.0;
    for (int i : support) {
      sum += v(i);
    }
    const double theta = (sum - 1.0) / support.size();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    bool feasible = true;
    for (int i : support) {
      w(i) = v(i) - theta;
      feasible = feasible && w(i) >= -1e-12;
    }
    // KKT: off-support coordinates must not want to enter.
    for (int i = 0; i < n && feasible; ++i) {
      if (!(mask & (1 << i))) {
        feasible = v(i) - theta <= 1e-12;
      }
    }
    if (feasible) {
      const double dist = (w - v).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = w;
      }
    }
  }
  return best;
}

/// Active-set QP oracle for small n: solves every support's equality
/// system and returns the KKT-certified optimum.
Eigen::VectorXd qp_oracle(const Eigen::MatrixXd& g, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(g.rows());
  Eigen::VectorXd best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        support.push_back(i);
      }
    }
    const int m = static_cast<int>(support.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        kkt(r, c) = 2.0 * g(support[r], support[c]);
      }
      kkt(r, m) = kkt(m, r) = 1.0;
      rhs(r) = 2.0 * b(support[r]);
    }
    rhs(m) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) {
      continue;
    }
    const Eigen::VectorXd sol = lu.solve(rhs);
    const double lambda = sol(m);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    bool ok = true;
    for (int r = 0; r < m; ++r) {
      w(support[r]) = sol(r);
      ok = ok && sol(r) >= -1e-10;
    }
    const Eigen::VectorXd q = 2.0 * (g * w - b);
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask & (1 << i))) {
        ok = q(i) - lambda >= -1e-10;
      }
    }
    if (ok) {
      const double obj = w.dot(g * w) - 2.0 * b.dot(w);
      if (obj < best_obj) {
        best_obj = obj;
        best = w;
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("project_simplex basics") {
  Eigen::VectorXd feasible(2);
  feasible << 0.5, 0.5;
  CHECK((project_simplex(feasible).values() - feasible).norm() <= 1e-15);

  Eigen::VectorXd outside(2);
  outside << 2.0, 0.0;
  const SimplexWeights p = project_simplex(outside);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));

  Eigen::VectorXd mixed(3);
  mixed << 0.6, 0.4, -0.2;
  const Eigen::VectorXd oracle = project_simplex_oracle(mixed);
  CHECK((project_simplex(mixed).values() - oracle).norm() <= 1e-12);

  CHECK_THROWS_AS(project_simplex(Eigen::VectorXd()), Error);
}

TEST_CASE("project_simplex against the KKT oracle, idempotence, nonexpansiveness") {
  Rng rng(211);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 3);  // oracle scale
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
      v(i) = 4.0 * (rng.uniform() - 0.5);
    }
    const SimplexWeights w = project_simplex(v);
    CHECK((w.values() - project_simplex_oracle(v)).norm() <= 1e-10);

    // Exact invariants.
    CHECK(w.values().minCoeff() >= 0.0);
    CHECK(std::abs(w.values().sum() - 1.0) <= 1e-10);

    // Idempotence.
    CHECK((project_simplex(w.values()).values() - w.values()).norm() <= 1e-14);

    // Nonexpansiveness against a second point.
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) {
      u(i) = 4.0 * (rng.uniform() - 0.5);
    }
    const SimplexWeights wu = project_simplex(u);
    CHECK((w.values() - wu.values()).norm() <= (v - u).norm() + 1e-12);
  }
}

TEST_CASE("simplex weights validation") {
  Eigen::VectorXd bad_sum(2);
  bad_sum << 0.6, 0.6;
  CHECK_THROWS_AS((void)SimplexWeights(bad_sum), Error);
  Eigen::VectorXd negative(2);
  negative << 1.5, -0.5;
  CHECK_THROWS_AS((void)SimplexWeights(negative), Error);
  CHECK(SimplexWeights::uniform(4)[2] == doctest::Approx(0.25));
  CHECK(SimplexWeights::vertex(3, 1)[1] == doctest::Approx(1.0));
}

TEST_CASE("spg on separable quadratics") {
  // Feasible unconstrained minimum.
  Eigen::VectorXd t1(2);
  t1 << 1.0, 0.0;
  ObjectiveGradient f1 = [&](const Eigen::VectorXd& w, Eigen::VectorXd& g) {
    g = 2.0 * (w - t1);
    return (w - t1).squaredNorm();
  };
  auto [w1, r1] = spg_minimize(f1, SimplexWeights::uniform(2));
  CHECK(r1.converged);
  CHECK(w1[0] == doctest::Approx(1.0).epsilon(1e-6));

  // Symmetric target outside the simplex pulls to the center.
  Eigen::VectorXd t2(2);
  t2 << 2.0, 2.0;
  ObjectiveGradient f2 = [&](const Eigen::VectorXd& w, Eigen::VectorXd& g) {
    g = 2.0 * (w - t2);
    return (w - t2).squaredNorm();
  };
  auto [w2, r2] = spg_minimize(f2, SimplexWeights::uniform(2));
  CHECK(w2[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(w2[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r2.final_objective <= (SimplexWeights::uniform(2).values() - t2).squaredNorm());
}

TEST_CASE("spg matches qp_simplex on random convex quadratics") {
  Rng rng(223);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4;
    const Eigen::MatrixXd a = rng.normal_matrix(n, n);
    const Eigen::MatrixXd g =
        a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      b(i) = rng.normal();
    }
    ObjectiveGradient fg = [&](const Eigen::VectorXd& w, Eigen::VectorXd& gr) {
      gr = 2.0 * (g * w - b);
      return w.dot(g * w) - 2.0 * b.dot(w);
    };
    auto [w_spg, rep] = spg_minimize(fg, SimplexWeights::uniform(n));
    auto [w_qp, rep_qp] = qp_simplex(g, b);
    const double f_spg = w_spg.values().dot(g * w_spg.values()) -
                         2.0 * b.dot(w_spg.values());
    CHECK(std::abs(f_spg - rep_qp.final_objective) <= 1e-6);
    CHECK((w_spg.values() - w_qp.values()).norm() <= 1e-3);
  }
}

TEST_CASE("spg rejects non-finite objectives with a diagnostic") {
  ObjectiveGradient fg = [](const Eigen::VectorXd& w, Eigen::VectorXd& g) {
    g = Eigen::VectorXd::Zero(w.size());
    return std::numeric_limits<double>::quiet_NaN();
  };
  try {
    spg_minimize(fg, SimplexWeights::uniform(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteObjective);
    CHECK(std::string(e.what()).find("w = [") != std::string::npos);
  }
}

TEST_CASE("spg never ends above the start") {
  Rng rng(227);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 5);
    const Eigen::MatrixXd a = rng.normal_matrix(n, n);
    const Eigen::MatrixXd g = a * a.transpose();
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      b(i) = 2.0 * rng.normal();
    }
    ObjectiveGradient fg = [&](const Eigen::VectorXd& w, Eigen::VectorXd& gr) {
      gr = 2.0 * (g * w - b);
      return w.dot(g * w) - 2.0 * b.dot(w);
    };
    const SimplexWeights w0 = SimplexWeights::uniform(n);
    Eigen::VectorXd dummy(n);
    const double f0 = fg(w0.values(), dummy);
    auto [w, rep] = spg_minimize(fg, w0);
    CHECK(rep.final_objective <= f0 + 1e-12);
  }
}

TEST_CASE("qp_simplex basics and certificates") {
  // n = 1 is forced.
  {
    Eigen::MatrixXd g(1, 1);
    g << 3.0;
    Eigen::VectorXd b(1);
    b << 1.0;
    auto [w, rep] = qp_simplex(g, b);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(rep.converged);
  }

  // Hand case: minimize w1^2 + w2^2 - 2 w1 -> (1, 0).
  {
    const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd b(2);
    b << 1.0, 0.0;
    auto [w, rep] = qp_simplex(g, b);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w[1] == doctest::Approx(0.0).epsilon(1e-9));
  }

  // Interior optimum: y is the mean of the x_i, distance 0.
  {
    Rng rng(229);
    const int d = 4, n = 3;
    Eigen::MatrixXd x(d, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < d; ++i) {
        x(i, j) = rng.normal();
      }
    }
    const Eigen::VectorXd y = x.rowwise().mean();
    auto [w, rep] = qp_simplex(x.transpose() * x, x.transpose() * y);
    CHECK((y - x * w.values()).norm() <= 1e-7);
  }
}

TEST_CASE("qp_simplex against the active-set oracle") {
  Rng rng(233);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 2);
    const Eigen::MatrixXd a = rng.normal_matrix(n, n);
    const Eigen::MatrixXd g =
        a * a.transpose() + 0.05 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      b(i) = 2.0 * rng.normal();
    }
    auto [w, rep] = qp_simplex(g, b);
    const Eigen::VectorXd oracle = qp_oracle(g, b);
    REQUIRE(oracle.size() == n);
    const double f_solver = rep.final_objective;
    const double f_oracle = oracle.dot(g * oracle) - 2.0 * b.dot(oracle);
    CHECK(f_solver <= f_oracle + 1e-9);
    CHECK(qp_kkt_residual(g, b, w.values()) <= kQpKktTol);
  }
}

TEST_CASE("qp_simplex rejects bad Gram matrices") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(qp_simplex(asym, Eigen::VectorXd::Zero(2)), Error);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -1.0;
  try {
    qp_simplex(indefinite, Eigen::VectorXd::Zero(2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidGram);
  }
}
