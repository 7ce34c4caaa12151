// SPDX-License-Identifier: Apache-2.0

#include "core/matrix.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace mccm {

namespace detail {

Eigen::MatrixXd symmetrized(Eigen::MatrixXd m, const char* type_name) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << type_name << ": expected a square matrix, got " << m.rows() << "x"
       << m.cols();
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(type_name) + ": entries must be finite");
  }
  const int d = static_cast<int>(m.rows());
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double gap = std::abs(m(i, j) - m(j, i));
      const double scale = std::max(1.0, std::abs(m(i, j)));
      if (gap > kSymTol * scale) {
        std::ostringstream os;
        os << type_name << ": entry (" << i << "," << j
           << ") breaks symmetry by " << gap << " (tolerance "
           << kSymTol * scale << ")";
        throw Error(ErrorCode::NotSymmetric, os.str());
      }
    }
  }
  return 0.5 * (m + m.transpose());
}

void require_pd(const Eigen::VectorXd& eigenvalues, const char* op) {
  const double floor = pd_floor(eigenvalues(eigenvalues.size() - 1));
  if (eigenvalues(0) <= floor) {
    std::ostringstream os;
    os << op << ": matrix is not positive definite enough (min eigenvalue "
       << eigenvalues(0) << ", floor " << floor << ")";
    throw Error(ErrorCode::DegenerateMatrix, os.str());
  }
}

}  // namespace detail

SymMatrix::SymMatrix(Eigen::MatrixXd m)
    : m_(detail::symmetrized(std::move(m), "SymMatrix")) {}

SymMatrix::SymMatrix(const SpdMatrix& m) : m_(m.mat()) {}

SymMatrix SymMatrix::zero(int dim) {
  if (dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "SymMatrix: dim must be >= 1");
  }
  return SymMatrix(Trusted{}, Eigen::MatrixXd::Zero(dim, dim));
}

SymMatrix sym_unchecked(Eigen::MatrixXd m) {
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  return SymMatrix(SymMatrix::Trusted{}, std::move(s));
}

SpdMatrix SpdMatrix::checked(Eigen::MatrixXd m) {
  Eigen::MatrixXd s = detail::symmetrized(std::move(m), "SpdMatrix");
  EigenPair eig = sym_eig(s);
  detail::require_pd(eig.values, "SpdMatrix");
  return SpdMatrix(std::move(s));
}

SpdMatrix SpdMatrix::unchecked(Eigen::MatrixXd m) {
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  return SpdMatrix(std::move(s));
}

SpdMatrix SpdMatrix::identity(int dim) {
  if (dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "SpdMatrix: dim must be >= 1");
  }
  return SpdMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SpdMatrix SpdMatrix::diagonal(const Eigen::VectorXd& entries) {
  if (entries.size() < 1) {
    throw Error(ErrorCode::InvalidArgument, "SpdMatrix: dim must be >= 1");
  }
  if ((entries.array() <= 0.0).any()) {
    throw Error(ErrorCode::DegenerateMatrix,
                "SpdMatrix: diagonal entries must be positive");
  }
  return SpdMatrix(Eigen::MatrixXd(entries.asDiagonal()));
}

EigenPair sym_eig(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigFailed,
                "sym_eig: eigendecomposition did not converge");
  }
  return EigenPair{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

Eigen::MatrixXd apply_eigenvalue_fn(const EigenPair& eig,
                                    const Eigen::VectorXd& mapped) {
  return eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
}

}  // namespace

SqrtPair spd_sqrt_pair(const SpdMatrix& a) {
  EigenPair eig = sym_eig(a.mat());
  detail::require_pd(eig.values, "spd_sqrt_pair");
  Eigen::VectorXd root = eig.values.array().sqrt();
  Eigen::VectorXd inv_root = root.array().inverse();
  return SqrtPair{apply_eigenvalue_fn(eig, root),
                  apply_eigenvalue_fn(eig, inv_root)};
}

SpdMatrix sym_exp(const SymMatrix& a) {
  EigenPair eig = sym_eig(a.mat());
  Eigen::VectorXd mapped = eig.values.array().exp();
  if (!mapped.allFinite()) {
    throw Error(ErrorCode::DegenerateMatrix,
                "sym_exp: eigenvalue overflow in the matrix exponential");
  }
  return SpdMatrix::unchecked(apply_eigenvalue_fn(eig, mapped));
}

SymMatrix spd_log(const SpdMatrix& a) {
  EigenPair eig = sym_eig(a.mat());
  detail::require_pd(eig.values, "spd_log");
  Eigen::VectorXd mapped = eig.values.array().log();
  return sym_unchecked(apply_eigenvalue_fn(eig, mapped));
}

SpdMatrix spd_sqrt(const SpdMatrix& a) {
  EigenPair eig = sym_eig(a.mat());
  detail::require_pd(eig.values, "spd_sqrt");
  Eigen::VectorXd mapped = eig.values.array().sqrt();
  return SpdMatrix::unchecked(apply_eigenvalue_fn(eig, mapped));
}

SpdMatrix spd_inv_sqrt(const SpdMatrix& a) {
  EigenPair eig = sym_eig(a.mat());
  detail::require_pd(eig.values, "spd_inv_sqrt");
  Eigen::VectorXd mapped = eig.values.array().rsqrt();
  return SpdMatrix::unchecked(apply_eigenvalue_fn(eig, mapped));
}

SpdMatrix spd_inv(const SpdMatrix& a) {
  EigenPair eig = sym_eig(a.mat());
  detail::require_pd(eig.values, "spd_inv");
  Eigen::VectorXd mapped = eig.values.array().inverse();
  return SpdMatrix::unchecked(apply_eigenvalue_fn(eig, mapped));
}

}  // namespace mccm
