#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "ssx/matrix_core.hpp"
#include "ssx/rng.hpp"

namespace {

using ssx::Complex;
using ssx::ComplexMatrix;
using ssx::ComplexVector;
using ssx::RealMatrix;

constexpr double kPi = 3.14159265358979323846;

RealMatrix random_matrix(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> uniform(-scale, scale);
  RealMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = uniform(rng);
  }
  return M;
}

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion:
// p(x) = x^n + c[0] x^{n-1} + ... + c[n-1].
std::vector<double> char_poly(const RealMatrix& M) {
  const int n = static_cast<int>(M.rows());
  std::vector<double> c(n);
  RealMatrix A = M;
  for (int k = 1; k <= n; ++k) {
    c[k - 1] = -A.trace() / k;
    if (k < n) A = M * (A + c[k - 1] * RealMatrix::Identity(n, n));
  }
  return c;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("spectrum roots satisfy an independently computed char poly") {
  auto rng = ssx::stream_engine(41, 0);
  for (int trial = 0; trial < 6; ++trial) {
    const RealMatrix M = random_matrix(rng, 5, 1.5);
    const std::vector<double> c = char_poly(M);
    const ssx::SpectrumReport report = ssx::spectrum(M);
    REQUIRE(report.eigenvalues.size() == 5);
    for (Eigen::Index k = 0; k < 5; ++k) {
      const Complex lambda = report.eigenvalues[k];
      Complex value{1.0, 0.0};
      double scale = 1.0;
      for (int d = 0; d < 5; ++d) {
        value = value * lambda + c[d];
        scale = scale * std::abs(lambda) + std::abs(c[d]);
      }
      CHECK(std::abs(value) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("spectrum separates real and non-real eigenvalues") {
  RealMatrix rotation(2, 2);
  rotation << 0.0, -1.0, 1.0, 0.0;
  const ssx::SpectrumReport skew = ssx::spectrum(rotation);
  CHECK(skew.real_eigenvalues.empty());
  CHECK(skew.max_abs_real == 0.0);
  CHECK(skew.real_part_max <= 1e-12);

  auto rng = ssx::stream_engine(42, 0);
  RealMatrix symmetric = random_matrix(rng, 4, 1.0);
  symmetric = RealMatrix(0.5 * (symmetric + symmetric.transpose()));
  const ssx::SpectrumReport sym = ssx::spectrum(symmetric);
  CHECK(sym.real_eigenvalues.size() == 4);
  for (std::size_t k = 1; k < sym.real_eigenvalues.size(); ++k) {
    CHECK(sym.real_eigenvalues[k - 1] <= sym.real_eigenvalues[k]);
  }
}

TEST_CASE("matrix_exp reproduces the planar rotation closed form") {
  RealMatrix J(2, 2);
  J << 0.0, -1.0, 1.0, 0.0;
  const double theta = kPi / 3.0;
  const RealMatrix R = ssx::matrix_exp(RealMatrix(theta * J));
  CHECK(R(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(R(0, 1) == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-13));
  CHECK(R(1, 0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
  CHECK(R(1, 1) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("matrix_exp inverse identity") {
  auto rng = ssx::stream_engine(43, 0);
  for (int trial = 0; trial < 4; ++trial) {
    const RealMatrix X = random_matrix(rng, 6, 1.0);
    const RealMatrix product =
        ssx::matrix_exp(X) * ssx::matrix_exp(RealMatrix(-X));
    CHECK((product - RealMatrix::Identity(6, 6)).norm() <= 1e-11);
  }
  const ComplexMatrix Z =
      random_matrix(rng, 5, 0.8).cast<Complex>() +
      Complex{0.0, 1.0} * random_matrix(rng, 5, 0.8).cast<Complex>();
  const ComplexMatrix product =
      ssx::matrix_exp(Z) * ssx::matrix_exp(ComplexMatrix(-Z));
  CHECK((product - ComplexMatrix::Identity(5, 5)).norm() <= 1e-11);
}

TEST_CASE("matrix_cos double angle identity") {
  auto rng = ssx::stream_engine(44, 0);
  const RealMatrix M = random_matrix(rng, 5, 1.2);
  const RealMatrix lhs = ssx::matrix_cos(RealMatrix(2.0 * M));
  const RealMatrix cosM = ssx::matrix_cos(M);
  const RealMatrix rhs =
      RealMatrix(2.0 * cosM * cosM - RealMatrix::Identity(5, 5));
  CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
}

TEST_CASE("matrix_cos on a diagonal matrix") {
  RealMatrix D = RealMatrix::Zero(2, 2);
  D(0, 0) = kPi / 2.0;
  const RealMatrix C = ssx::matrix_cos(D);
  CHECK(std::abs(C(0, 0)) <= 1e-13);
  CHECK(C(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(C(0, 1)) <= 1e-13);
  CHECK(std::abs(C(1, 0)) <= 1e-13);
}

TEST_CASE("matrix_exp rejects matrices past the overflow guard") {
  RealMatrix big = RealMatrix::Zero(3, 3);
  big(0, 1) = 700.0;
  CHECK_THROWS_AS(ssx::matrix_exp(big), ssx::NumericError);
}

TEST_CASE("realify guards the imaginary residue") {
  ComplexMatrix M = ComplexMatrix::Identity(2, 2);
  M(0, 1) = Complex{0.0, 1e-3};
  CHECK_THROWS_AS(ssx::realify(M, "test"), ssx::NumericError);
  M(0, 1) = Complex{0.0, 1e-12};
  const RealMatrix R = ssx::realify(M, "test");
  CHECK(R(0, 1) == 0.0);
  CHECK(R(0, 0) == 1.0);
}

TEST_CASE("jordan_chevalley on the 2x2 shear") {
  RealMatrix M(2, 2);
  M << 1.0, 1.0, 0.0, 1.0;
  const ssx::RealJordanDecomposition parts = ssx::jordan_chevalley(M);
  CHECK((parts.semisimple - RealMatrix::Identity(2, 2)).norm() <= 1e-6);
  RealMatrix N(2, 2);
  N << 0.0, 1.0, 0.0, 0.0;
  CHECK((parts.nilpotent - N).norm() <= 1e-6);
}

TEST_CASE("jordan_chevalley on diagonal and strictly upper matrices") {
  RealMatrix D = RealMatrix::Zero(3, 3);
  D.diagonal() << 1.0, 2.0, 3.0;
  const ssx::RealJordanDecomposition diag_parts = ssx::jordan_chevalley(D);
  CHECK(diag_parts.nilpotent.norm() <= 1e-9);
  CHECK((diag_parts.semisimple - D).norm() <= 1e-9);

  RealMatrix U = RealMatrix::Zero(3, 3);
  U(0, 1) = 1.0;
  U(0, 2) = 2.0;
  U(1, 2) = 1.0;
  const ssx::RealJordanDecomposition upper_parts = ssx::jordan_chevalley(U);
  CHECK(upper_parts.semisimple.norm() <= 1e-6);
  CHECK((upper_parts.nilpotent - U).norm() <= 1e-6);
}

TEST_CASE("jordan_chevalley recovers a constructed mixed decomposition") {
  auto rng = ssx::stream_engine(45, 0);
  const int n = 6;
  RealMatrix D = RealMatrix::Zero(n, n);
  D.diagonal() << 1.0, 1.0, 2.0, 2.0, -1.0, -1.0;
  // Chains of length two: longer chains spread the computed eigenvalue
  // cluster past the merge tolerance once the basis is no longer triangular.
  RealMatrix N = RealMatrix::Zero(n, n);
  N(0, 1) = 1.0;  // inside the eigenvalue-1 block
  N(2, 3) = 1.0;  // inside the eigenvalue-2 block
  const RealMatrix V =
      RealMatrix::Identity(n, n) + 0.3 * random_matrix(rng, n, 1.0);
  REQUIRE(std::abs(V.determinant()) > 1e-3);
  const RealMatrix Vinv = V.inverse();
  const RealMatrix M = V * (D + N) * Vinv;
  const RealMatrix S_expected = V * D * Vinv;

  const ssx::RealJordanDecomposition parts = ssx::jordan_chevalley(M);
  CHECK((parts.semisimple - S_expected).norm() <=
        1e-7 * (1.0 + S_expected.norm()));
  // The nilpotent part has vanishing sixth power.
  RealMatrix power = parts.nilpotent;
  for (int k = 1; k < n; ++k) power = RealMatrix(power * parts.nilpotent);
  CHECK(power.norm() <= 1e-6);
  // Parts commute.
  CHECK((parts.semisimple * parts.nilpotent -
         parts.nilpotent * parts.semisimple)
            .norm() <= 1e-7);
}

TEST_CASE("jordan_chevalley is similarity equivariant") {
  auto rng = ssx::stream_engine(46, 0);
  RealMatrix M = RealMatrix::Zero(4, 4);
  M(0, 1) = 1.0;
  M(2, 2) = 3.0;
  M(3, 3) = 3.0;
  M(2, 3) = 2.0;
  const RealMatrix P =
      RealMatrix::Identity(4, 4) + 0.25 * random_matrix(rng, 4, 1.0);
  const RealMatrix Pinv = P.inverse();
  const ssx::RealJordanDecomposition base = ssx::jordan_chevalley(M);
  const ssx::RealJordanDecomposition moved =
      ssx::jordan_chevalley(RealMatrix(P * M * Pinv));
  CHECK((moved.semisimple - P * base.semisimple * Pinv).norm() <=
        1e-7 * (1.0 + moved.semisimple.norm()));
}

TEST_CASE("jordan_chevalley refuses clusters it cannot separate") {
  // Twelve eigenvalues on a ring of radius 1.8e-6 chain-merge into one
  // cluster whose center sits next to a separate eigenvalue at the origin:
  // the inter-cluster gap is then smaller than the cluster radius.
  const int ring = 12;
  ComplexMatrix M = ComplexMatrix::Zero(ring + 1, ring + 1);
  for (int k = 0; k < ring; ++k) {
    const double angle = 2.0 * kPi * k / ring;
    M(k, k) = 1.8e-6 * Complex{std::cos(angle), std::sin(angle)};
  }
  M(ring, ring) = Complex{0.0, 0.0};
  CHECK_THROWS_AS(ssx::jordan_chevalley(M), ssx::ClusteringError);
}

TEST_CASE("singular values and kernel detection") {
  RealMatrix D = RealMatrix::Zero(3, 3);
  D.diagonal() << 3.0, 2.0, 1e-12;
  CHECK(ssx::smallest_singular_value(D) <= 1e-11);
  CHECK(ssx::largest_singular_value(D) == doctest::Approx(3.0));
  CHECK_FALSE(ssx::has_trivial_kernel(D));
  CHECK(ssx::has_trivial_kernel(RealMatrix(RealMatrix::Identity(3, 3))));
}

}  // TEST_SUITE
