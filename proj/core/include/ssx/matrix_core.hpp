#pragma once

#include <vector>

#include "ssx/numeric.hpp"

namespace ssx {

struct SpectrumReport {
  ComplexVector eigenvalues;             // all n eigenvalues with multiplicity
  std::vector<double> real_eigenvalues;  // |Im| <= tol_imag, sorted ascending
  double tol_imag = 0.0;                 // threshold used for classification
  double real_part_max = 0.0;            // max |Re lambda| over all eigenvalues
  double max_abs_real = 0.0;  // max |lambda| over real_eigenvalues, 0 if none
};

SpectrumReport spectrum(const ComplexMatrix& M);
SpectrumReport spectrum(const RealMatrix& M);

// Relative accuracy <= 1e-12 for ||M|| <= 20.
ComplexMatrix matrix_exp(const ComplexMatrix& M);
RealMatrix matrix_exp(const RealMatrix& M);

// cos M = (exp(iM) + exp(-iM)) / 2.
ComplexMatrix matrix_cos(const ComplexMatrix& M);
RealMatrix matrix_cos(const RealMatrix& M);

struct JordanDecomposition {
  ComplexMatrix semisimple;
  ComplexMatrix nilpotent;
};

struct RealJordanDecomposition {
  RealMatrix semisimple;
  RealMatrix nilpotent;
};

// Additive decomposition M = S + N with S diagonalizable, N nilpotent,
// SN = NS, via eigenvalue clustering and contour-integral spectral
// projectors. Throws ClusteringError when two eigenvalue clusters are too
// close to separate but not merged.
JordanDecomposition jordan_chevalley(const ComplexMatrix& M);
RealJordanDecomposition jordan_chevalley(const RealMatrix& M);

double smallest_singular_value(const RealMatrix& M);
double smallest_singular_value(const ComplexMatrix& M);
double largest_singular_value(const RealMatrix& M);
double largest_singular_value(const ComplexMatrix& M);

// sigma_min > kTolRankScale * (sigma_max + 1).
bool has_trivial_kernel(const RealMatrix& M);
bool has_trivial_kernel(const ComplexMatrix& M);

// Checked real part: throws NumericError if the imaginary residue exceeds
// tol_imag of the input scale.
RealMatrix realify(const ComplexMatrix& M, const char* where);

}  // namespace ssx
