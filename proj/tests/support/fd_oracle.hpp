#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "ssx/numeric.hpp"

namespace ssx::testing {

// Complex Hessian quadratic form of a real-valued ambient function rho at z,
// evaluated on the direction w, by central differences:
//   H(w) = (D^2_w + D^2_{iw}) rho / 4.
// For rho = G(F(z)) with smooth G this is the Levi form sum rho_{j kbar} w_j
// conj(w_k), independent of the pluriharmonic part.
inline double fd_complex_hessian(
    const std::function<double(const ComplexVector&)>& rho,
    const ComplexVector& z, const ComplexVector& w, double step = 1e-4) {
  auto second = [&](const ComplexVector& dir) {
    return (rho(z + step * dir) - 2.0 * rho(z) + rho(z - step * dir)) /
           (step * step);
  };
  const Complex i{0.0, 1.0};
  return 0.25 * (second(w) + second(ComplexVector(i * w)));
}

// Hermitian matrix of the form over a given column basis, recovered from the
// quadratic values by polarization:
//   H(v, w) = sum_k i^k Q(v + i^k w) / 4.
inline Eigen::MatrixXcd fd_hessian_matrix(
    const std::function<double(const ComplexVector&)>& rho,
    const ComplexVector& z, const Eigen::MatrixXcd& basis,
    double step = 1e-4) {
  const Eigen::Index k = basis.cols();
  Eigen::MatrixXcd H(k, k);
  auto quad = [&](const ComplexVector& w) {
    return fd_complex_hessian(rho, z, w, step);
  };
  const Complex i{0.0, 1.0};
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const ComplexVector v = basis.col(a);
      const ComplexVector w = basis.col(b);
      Complex value{0.0, 0.0};
      Complex phase{1.0, 0.0};
      for (int m = 0; m < 4; ++m) {
        value += phase * quad(ComplexVector(v + phase * w));
        phase *= i;
      }
      // Hermitian convention: H(a, b) = rho_{a bbar} pairing with conj on b.
      H(a, b) = std::conj(value / 4.0);
    }
  }
  return Eigen::MatrixXcd(0.5 * (H + H.adjoint()));
}

}  // namespace ssx::testing
