// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_ERROR_HPP
#define MCCM_CORE_ERROR_HPP

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mccm {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotSymmetric,
  DegenerateMatrix,
  EigFailed,
  MaxIterExceeded,
  NonFiniteObjective,
  InvalidGram,
  SolverFailed,
  RankDeficient,
  ConstructionFailed,
  ParseError,
  InvalidRecord,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Iteration cap reached before the stopping criterion; carries the last
/// iterate so callers can inspect or accept it.
class MaxIterError : public Error {
 public:
  MaxIterError(const std::string& what, Eigen::MatrixXd last_iterate,
               double residual)
      : Error(ErrorCode::MaxIterExceeded, what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const Eigen::MatrixXd& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  Eigen::MatrixXd last_iterate_;
  double residual_;
};

class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, double min_eigenvalue,
                     double suggested_ridge)
      : Error(ErrorCode::RankDeficient, what),
        min_eigenvalue_(min_eigenvalue),
        suggested_ridge_(suggested_ridge) {}

  double min_eigenvalue() const { return min_eigenvalue_; }
  double suggested_ridge() const { return suggested_ridge_; }

 private:
  double min_eigenvalue_;
  double suggested_ridge_;
};

/// Malformed dataset line (bad JSON or bad schema); line numbers are 1-based.
class ParseLineError : public Error {
 public:
  ParseLineError(const std::string& what, std::size_t line)
      : Error(ErrorCode::ParseError, what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed dataset line whose matrix fails the SPD checks.
class InvalidRecordError : public Error {
 public:
  InvalidRecordError(const std::string& what, std::size_t line,
                     double min_eigenvalue)
      : Error(ErrorCode::InvalidRecord, what),
        line_(line),
        min_eigenvalue_(min_eigenvalue) {}

  std::size_t line() const { return line_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  std::size_t line_;
  double min_eigenvalue_;
};

}  // namespace mccm

#endif  // MCCM_CORE_ERROR_HPP
