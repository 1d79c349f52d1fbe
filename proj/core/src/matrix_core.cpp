#include "ssx/matrix_core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace ssx {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kExpNormLimit = 600.0;  // exp overflow guard for doubles
constexpr int kContourPoints = 64;

SpectrumReport classify_spectrum(ComplexVector eigenvalues, double norm) {
  SpectrumReport report;
  report.eigenvalues = std::move(eigenvalues);
  report.tol_imag = tol_imag_for(norm);
  for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
    const Complex lambda = report.eigenvalues[k];
    report.real_part_max = std::max(report.real_part_max, std::abs(lambda.real()));
    if (std::abs(lambda.imag()) <= report.tol_imag) {
      report.real_eigenvalues.push_back(lambda.real());
    }
  }
  std::sort(report.real_eigenvalues.begin(), report.real_eigenvalues.end());
  for (double lambda : report.real_eigenvalues) {
    report.max_abs_real = std::max(report.max_abs_real, std::abs(lambda));
  }
  return report;
}

struct Cluster {
  Complex center;
  double radius = 0.0;
  std::vector<Eigen::Index> members;
};

std::vector<Cluster> cluster_eigenvalues(const ComplexVector& eigenvalues,
                                         double tol_cluster) {
  const Eigen::Index n = eigenvalues.size();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  std::function<Eigen::Index(Eigen::Index)> find =
      [&](Eigen::Index x) -> Eigen::Index {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (std::abs(eigenvalues[a] - eigenvalues[b]) <= tol_cluster) {
        parent[find(a)] = find(b);
      }
    }
  }
  std::vector<Cluster> clusters;
  std::vector<Eigen::Index> root_to_cluster(n, -1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index r = find(k);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<Eigen::Index>(clusters.size());
      clusters.push_back({});
    }
    clusters[root_to_cluster[r]].members.push_back(k);
  }
  for (Cluster& c : clusters) {
    Complex sum{0.0, 0.0};
    for (Eigen::Index k : c.members) sum += eigenvalues[k];
    c.center = sum / static_cast<double>(c.members.size());
    for (Eigen::Index k : c.members) {
      c.radius = std::max(c.radius, std::abs(eigenvalues[k] - c.center));
    }
  }
  return clusters;
}

}  // namespace

SpectrumReport spectrum(const ComplexMatrix& M) {
  require_square(M, "spectrum");
  require_finite(M, "spectrum");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectrum: eigenvalue iteration failed on " +
                       std::to_string(M.rows()) + "x" +
                       std::to_string(M.cols()) + " matrix");
  }
  return classify_spectrum(solver.eigenvalues(), M.norm());
}

SpectrumReport spectrum(const RealMatrix& M) {
  require_square(M, "spectrum");
  require_finite(M, "spectrum");
  Eigen::EigenSolver<RealMatrix> solver(M, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectrum: eigenvalue iteration failed on " +
                       std::to_string(M.rows()) + "x" +
                       std::to_string(M.cols()) + " matrix");
  }
  return classify_spectrum(solver.eigenvalues(), M.norm());
}

ComplexMatrix matrix_exp(const ComplexMatrix& M) {
  require_square(M, "matrix_exp");
  require_finite(M, "matrix_exp");
  if (M.norm() > kExpNormLimit) {
    throw NumericError("matrix_exp: norm " + std::to_string(M.norm()) +
                       " exceeds the overflow guard");
  }
  ComplexMatrix result = M.exp();
  if (!result.allFinite()) {
    throw NumericError("matrix_exp: non-finite result");
  }
  return result;
}

RealMatrix matrix_exp(const RealMatrix& M) {
  require_square(M, "matrix_exp");
  require_finite(M, "matrix_exp");
  if (M.norm() > kExpNormLimit) {
    throw NumericError("matrix_exp: norm " + std::to_string(M.norm()) +
                       " exceeds the overflow guard");
  }
  RealMatrix result = M.exp();
  if (!result.allFinite()) {
    throw NumericError("matrix_exp: non-finite result");
  }
  return result;
}

ComplexMatrix matrix_cos(const ComplexMatrix& M) {
  require_square(M, "matrix_cos");
  require_finite(M, "matrix_cos");
  const Complex i{0.0, 1.0};
  ComplexMatrix plus = matrix_exp(ComplexMatrix(i * M));
  ComplexMatrix minus = matrix_exp(ComplexMatrix(-i * M));
  return 0.5 * (plus + minus);
}

RealMatrix matrix_cos(const RealMatrix& M) {
  return realify(matrix_cos(ComplexMatrix(M.cast<Complex>())), "matrix_cos");
}

JordanDecomposition jordan_chevalley(const ComplexMatrix& M) {
  require_square(M, "jordan_chevalley");
  require_finite(M, "jordan_chevalley");
  const Eigen::Index n = M.rows();

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("jordan_chevalley: eigenvalue iteration failed");
  }
  const ComplexVector eigenvalues = solver.eigenvalues();
  double max_abs = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    max_abs = std::max(max_abs, std::abs(eigenvalues[k]));
  }
  const double tol_cluster = 1e-6 * (1.0 + max_abs);
  const std::vector<Cluster> clusters =
      cluster_eigenvalues(eigenvalues, tol_cluster);

  if (clusters.size() == 1) {
    // Single cluster: S = center * I, N = M - S.
    JordanDecomposition result;
    result.semisimple =
        clusters[0].center * ComplexMatrix::Identity(n, n);
    result.nilpotent = M - result.semisimple;
    return result;
  }

  ComplexMatrix S = ComplexMatrix::Zero(n, n);
  ComplexMatrix projector_sum = ComplexMatrix::Zero(n, n);
  for (const Cluster& cluster : clusters) {
    double gap = std::numeric_limits<double>::infinity();
    for (const Cluster& other : clusters) {
      if (&other == &cluster) continue;
      for (Eigen::Index k : other.members) {
        gap = std::min(gap, std::abs(eigenvalues[k] - cluster.center));
      }
    }
    if (gap <= cluster.radius + tol_cluster) {
      std::ostringstream msg;
      msg << "jordan_chevalley: eigenvalue clusters too close to separate: "
          << "cluster at (" << cluster.center.real() << ", "
          << cluster.center.imag() << ") radius " << cluster.radius
          << " vs external gap " << gap << " (tol " << tol_cluster << ")";
      throw ClusteringError(msg.str());
    }
    const double radius = cluster.radius + 0.5 * (gap - cluster.radius);
    ComplexMatrix projector = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < kContourPoints; ++j) {
      const double angle = 2.0 * kPi * j / kContourPoints;
      const Complex point =
          cluster.center + radius * Complex{std::cos(angle), std::sin(angle)};
      ComplexMatrix shifted = point * ComplexMatrix::Identity(n, n) - M;
      Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
      projector += (radius * Complex{std::cos(angle), std::sin(angle)}) *
                   lu.inverse();
    }
    projector /= static_cast<double>(kContourPoints);
    projector_sum += projector;
    S += cluster.center * projector;
  }

  const double scale = 1.0 + M.norm();
  if ((projector_sum - ComplexMatrix::Identity(n, n)).norm() > 1e-6 * scale) {
    throw NumericError(
        "jordan_chevalley: spectral projectors do not sum to identity "
        "(residual " +
        std::to_string(
            (projector_sum - ComplexMatrix::Identity(n, n)).norm()) +
        ")");
  }

  JordanDecomposition result;
  result.semisimple = S;
  result.nilpotent = M - S;
  if ((result.semisimple * result.nilpotent -
       result.nilpotent * result.semisimple)
          .norm() > 1e-6 * scale) {
    throw NumericError("jordan_chevalley: computed parts fail to commute");
  }
  return result;
}

RealJordanDecomposition jordan_chevalley(const RealMatrix& M) {
  JordanDecomposition complex_parts =
      jordan_chevalley(ComplexMatrix(M.cast<Complex>()));
  RealJordanDecomposition result;
  result.semisimple = realify(complex_parts.semisimple, "jordan_chevalley");
  result.nilpotent = realify(complex_parts.nilpotent, "jordan_chevalley");
  return result;
}

double smallest_singular_value(const RealMatrix& M) {
  Eigen::JacobiSVD<RealMatrix> svd(M);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double smallest_singular_value(const ComplexMatrix& M) {
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double largest_singular_value(const RealMatrix& M) {
  Eigen::JacobiSVD<RealMatrix> svd(M);
  return svd.singularValues()(0);
}

double largest_singular_value(const ComplexMatrix& M) {
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return svd.singularValues()(0);
}

bool has_trivial_kernel(const RealMatrix& M) {
  Eigen::JacobiSVD<RealMatrix> svd(M);
  const auto& sigma = svd.singularValues();
  return sigma(sigma.size() - 1) > rank_tolerance(sigma(0));
}

bool has_trivial_kernel(const ComplexMatrix& M) {
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  const auto& sigma = svd.singularValues();
  return sigma(sigma.size() - 1) > rank_tolerance(sigma(0));
}

RealMatrix realify(const ComplexMatrix& M, const char* where) {
  const double residue = M.imag().norm();
  const double tol = tol_imag_for(M.norm());
  if (residue > tol) {
    throw NumericError(std::string(where) + ": imaginary residue " +
                       std::to_string(residue) + " exceeds tolerance " +
                       std::to_string(tol));
  }
  return M.real();
}

}  // namespace ssx
