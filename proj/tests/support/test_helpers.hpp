#pragma once

#include <stdexcept>

#include "ssx/symmetric_pair.hpp"

namespace ssx::testing {

// Basis matrix of the plane (i, j), 0-based with i < j.
inline RealMatrix plane(const SymmetricPairModel& pair, int i, int j) {
  for (std::size_t k = 0; k < pair.basis_planes.size(); ++k) {
    if (pair.basis_planes[k].i == i && pair.basis_planes[k].j == j) {
      return pair.basis[k];
    }
  }
  throw std::logic_error("test plane lookup: no such plane");
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ssx::testing
