#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ssx {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Dead band around critical thresholds (pi/2, pi/4, lattice values): verdicts
// inside the band are indeterminate rather than true/false.
inline constexpr double kTolMargin = 1e-6;
// Scale for classifying an eigenvalue as real: |Im| <= kTolImagScale*(1+|M|).
// Pessimistic on purpose: a near-real eigenvalue counts as real.
inline constexpr double kTolImagScale = 1e-8;
// Kernel detection: sigma_min <= kTolRankScale*(sigma_max+1) means singular.
inline constexpr double kTolRankScale = 1e-8;
// Residual bound for subalgebra membership checks.
inline constexpr double kTolMembership = 1e-10;

class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenvalue clusters too close to separate but not merged.
class ClusteringError : public NumericError {
 public:
  explicit ClusteringError(const std::string& what) : NumericError(what) {}
};

class UnsupportedModelError : public std::runtime_error {
 public:
  explicit UnsupportedModelError(const std::string& what)
      : std::runtime_error(what) {}
};

// Argument outside the documented domain of an operation.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& M, const char* where) {
  if (!M.allFinite()) {
    throw std::invalid_argument(std::string(where) +
                                ": matrix has non-finite entries");
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& M, const char* where) {
  if (M.rows() != M.cols() || M.rows() < 1) {
    throw std::invalid_argument(std::string(where) + ": matrix must be square, got " +
                                std::to_string(M.rows()) + "x" +
                                std::to_string(M.cols()));
  }
}

inline double tol_imag_for(double frobenius_norm) {
  return kTolImagScale * (1.0 + frobenius_norm);
}

inline double rank_tolerance(double sigma_max) {
  return kTolRankScale * (sigma_max + 1.0);
}

}  // namespace ssx
