#include "ssx/symmetric_pair.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace ssx {

namespace {

int plane_index(const SymmetricPairModel& pair, int i, int j) {
  // Lexicographic ordering of (i, j), i < j, over n indices.
  const int n = pair.p_sig + pair.q_sig;
  if (i > j) std::swap(i, j);
  int offset = 0;
  for (int a = 0; a < i; ++a) offset += n - 1 - a;
  return offset + (j - i - 1);
}

double epsilon_sign(const SymmetricPairModel& pair, int index) {
  return index < pair.p_sig ? 1.0 : -1.0;
}

std::string so_factor(int pp, int qq) {
  return "so(" + std::to_string(pp) + "," + std::to_string(qq) + ")";
}

std::string make_family_tag(const SymmetricPairModel& pair) {
  int plus_p = 0, plus_q = 0, minus_p = 0, minus_q = 0;
  const int n = pair.p_sig + pair.q_sig;
  for (int i = 0; i < n; ++i) {
    const bool positive_metric = i < pair.p_sig;
    if (pair.tau_signs[i] > 0) {
      (positive_metric ? plus_p : plus_q) += 1;
    } else {
      (positive_metric ? minus_p : minus_q) += 1;
    }
  }
  std::vector<std::string> factors;
  if (plus_p + plus_q >= 2) factors.push_back(so_factor(plus_p, plus_q));
  if (minus_p + minus_q >= 2) factors.push_back(so_factor(minus_p, minus_q));
  std::string h_part;
  if (factors.empty()) {
    h_part = "0";
  } else {
    h_part = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) h_part += "+" + factors[k];
  }
  return so_factor(pair.p_sig, pair.q_sig) + "/" + h_part;
}

struct EigenCluster {
  Complex center;
  std::vector<Eigen::Index> members;
};

std::vector<EigenCluster> cluster_values(const ComplexVector& values,
                                         double tol) {
  const Eigen::Index n = values.size();
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
      if (std::abs(values[a] - values[b]) <= tol) parent[find(a)] = find(b);
    }
  }
  std::vector<EigenCluster> clusters;
  std::vector<Eigen::Index> root_to_cluster(n, -1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index r = find(k);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<Eigen::Index>(clusters.size());
      clusters.push_back({});
    }
    clusters[root_to_cluster[r]].members.push_back(k);
  }
  for (EigenCluster& c : clusters) {
    Complex sum{0.0, 0.0};
    for (Eigen::Index k : c.members) sum += values[k];
    c.center = sum / static_cast<double>(c.members.size());
  }
  return clusters;
}

// Restricted roots of the span of `generators`, read from the eigenvector
// basis of a generic element.
std::vector<RestrictedRoot> compute_roots(
    const SymmetricPairModel& pair, const std::vector<RealMatrix>& generators,
    const std::vector<bool>& generator_compact) {
  static const double primes[] = {2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0};
  const std::size_t r = generators.size();
  RealMatrix generic = RealMatrix::Zero(generators[0].rows(),
                                        generators[0].cols());
  for (std::size_t k = 0; k < r; ++k) {
    generic += 0.5 * std::sqrt(primes[k % 8]) * generators[k];
  }
  const RealMatrix ad_generic = ad_matrix(pair, generic);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(
      ad_generic.cast<Complex>(), true);
  if (solver.info() != Eigen::Success) {
    throw NumericError("compute_roots: eigensolver failed");
  }
  const ComplexVector values = solver.eigenvalues();
  const ComplexMatrix V = solver.eigenvectors();
  double max_abs = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    max_abs = std::max(max_abs, std::abs(values[k]));
  }
  const double tol = 1e-6 * (1.0 + max_abs);
  const std::vector<EigenCluster> clusters = cluster_values(values, tol);

  Eigen::PartialPivLU<ComplexMatrix> lu(V);
  std::vector<ComplexMatrix> diagonalized;
  diagonalized.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    const ComplexMatrix ad_gen =
        ad_matrix(pair, generators[k]).cast<Complex>();
    diagonalized.push_back(lu.solve(ad_gen * V));
  }

  std::vector<RestrictedRoot> roots;
  for (const EigenCluster& cluster : clusters) {
    if (std::abs(cluster.center) <= tol) continue;  // zero weight space
    RestrictedRoot root;
    root.values = ComplexVector::Zero(static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < r; ++k) {
      Complex sum{0.0, 0.0};
      for (Eigen::Index column : cluster.members) {
        sum += diagonalized[k](column, column);
      }
      root.values[static_cast<Eigen::Index>(k)] =
          sum / static_cast<double>(cluster.members.size());
    }
    root.multiplicity = static_cast<int>(cluster.members.size());
    double value_scale = 0.0;
    for (Eigen::Index k = 0; k < root.values.size(); ++k) {
      value_scale = std::max(value_scale, std::abs(root.values[k]));
    }
    const double tol_vanish = 1e-7 * (1.0 + value_scale);
    bool vanishes_on_compact = true;
    bool vanishes_on_split = true;
    for (std::size_t k = 0; k < r; ++k) {
      const double magnitude =
          std::abs(root.values[static_cast<Eigen::Index>(k)]);
      if (magnitude > tol_vanish) {
        if (generator_compact[k]) {
          vanishes_on_compact = false;
        } else {
          vanishes_on_split = false;
        }
      }
    }
    if (vanishes_on_compact && !vanishes_on_split) {
      root.type = RootType::Real;
    } else if (vanishes_on_split && !vanishes_on_compact) {
      root.type = RootType::Imaginary;
    } else {
      root.type = RootType::Complex;
    }
    roots.push_back(std::move(root));
  }
  return roots;
}

// Signature of the tau*theta involution restricted to the kernel of
// (ad_A - value I) over the complex coefficients.
void eigenspace_signature(const SymmetricPairModel& pair, const RealMatrix& A,
                          Complex value, int* plus, int* minus) {
  const ComplexMatrix shifted =
      ad_matrix(pair, A).cast<Complex>() -
      value * ComplexMatrix::Identity(pair.dim, pair.dim);
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double tol = rank_tolerance(sigma(0));
  std::vector<Eigen::Index> kernel_columns;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) <= tol) kernel_columns.push_back(k);
  }
  *plus = 0;
  *minus = 0;
  if (kernel_columns.empty()) return;
  ComplexMatrix U(pair.dim, static_cast<Eigen::Index>(kernel_columns.size()));
  for (std::size_t c = 0; c < kernel_columns.size(); ++c) {
    U.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(kernel_columns[c]);
  }
  ComplexVector tau_theta(pair.dim);
  for (int k = 0; k < pair.dim; ++k) {
    tau_theta[k] = static_cast<double>(pair.tau_basis_signs[k] *
                                       pair.theta_basis_signs[k]);
  }
  const ComplexMatrix restricted =
      U.adjoint() * tau_theta.asDiagonal() * U;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(
      0.5 * (restricted + restricted.adjoint()));
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const double lambda = eig.eigenvalues()(k);
    if (lambda > 1e-7) {
      ++*plus;
    } else if (lambda < -1e-7) {
      ++*minus;
    }
  }
}

CartanSubspaceData finalize_cartan(const SymmetricPairModel& pair,
                                   CartanKind kind,
                                   std::vector<RealMatrix> generators,
                                   std::vector<bool> generator_compact) {
  CartanSubspaceData data;
  data.kind = kind;
  data.generator_compact = generator_compact;
  for (const RealMatrix& g : generators) {
    data.generators.push_back(decompose(pair, g));
  }
  data.roots = compute_roots(pair, generators, generator_compact);

  if (generators.size() == 1 && !data.roots.empty()) {
    // Rank-1 flavor: identify alpha and a possible 2 alpha, then split the
    // root spaces by the tau*theta involution.
    double min_abs = std::numeric_limits<double>::infinity();
    for (const RestrictedRoot& root : data.roots) {
      min_abs = std::min(min_abs, std::abs(root.values[0]));
    }
    Complex alpha_value{0.0, 0.0};
    for (const RestrictedRoot& root : data.roots) {
      const Complex v = root.values[0];
      if (std::abs(std::abs(v) - min_abs) <= 1e-6 * (1.0 + min_abs)) {
        data.m_alpha = root.multiplicity;
        // Prefer the representative with positive real or imaginary part.
        if (v.real() > 1e-9 || (std::abs(v.real()) <= 1e-9 && v.imag() > 0)) {
          alpha_value = v;
        } else if (std::abs(alpha_value) == 0.0) {
          alpha_value = -v;
        }
      }
    }
    for (const RestrictedRoot& root : data.roots) {
      if (std::abs(root.values[0] - 2.0 * alpha_value) <=
          1e-6 * (1.0 + 2.0 * std::abs(alpha_value))) {
        data.m_2alpha = root.multiplicity;
      }
    }
    data.restricted_type =
        data.m_2alpha > 0 ? RestrictedType::BC1 : RestrictedType::A1;
    eigenspace_signature(pair, generators[0], alpha_value,
                         &data.m_alpha_plus, &data.m_alpha_minus);
    if (data.m_2alpha > 0) {
      eigenspace_signature(pair, generators[0], 2.0 * alpha_value,
                           &data.m_2alpha_plus, &data.m_2alpha_minus);
    }
  } else {
    data.restricted_type = RestrictedType::Higher;
  }
  return data;
}

struct PlaneMatching {
  std::vector<std::pair<int, int>> rotations;
  std::pair<int, int> boost{-1, -1};
  bool has_boost = false;
};

// Deterministic disjoint-plane matching between the flipped and unflipped
// index sets. Rotation planes join equal metric signs, boost planes join
// opposite signs.
std::vector<std::pair<int, int>> match_same_sign(
    const SymmetricPairModel& pair, std::vector<int> side_a,
    std::vector<int> side_b) {
  std::vector<std::pair<int, int>> planes;
  for (int sign = 0; sign < 2; ++sign) {
    const double eps = sign == 0 ? 1.0 : -1.0;
    std::vector<int> from, to;
    for (int i : side_a) {
      if (epsilon_sign(pair, i) == eps) from.push_back(i);
    }
    for (int j : side_b) {
      if (epsilon_sign(pair, j) == eps) to.push_back(j);
    }
    const std::size_t m = std::min(from.size(), to.size());
    for (std::size_t k = 0; k < m; ++k) planes.emplace_back(from[k], to[k]);
  }
  std::sort(planes.begin(), planes.end());
  return planes;
}

std::vector<std::pair<int, int>> match_opposite_sign(
    const SymmetricPairModel& pair, std::vector<int> side_a,
    std::vector<int> side_b) {
  std::vector<std::pair<int, int>> planes;
  for (int sign = 0; sign < 2; ++sign) {
    const double eps = sign == 0 ? 1.0 : -1.0;
    std::vector<int> from, to;
    for (int i : side_a) {
      if (epsilon_sign(pair, i) == eps) from.push_back(i);
    }
    for (int j : side_b) {
      if (epsilon_sign(pair, j) == -eps) to.push_back(j);
    }
    const std::size_t m = std::min(from.size(), to.size());
    for (std::size_t k = 0; k < m; ++k) planes.emplace_back(from[k], to[k]);
  }
  std::sort(planes.begin(), planes.end());
  return planes;
}

bool full_same_sign_matching(const SymmetricPairModel& pair,
                             const std::vector<int>& side_a,
                             const std::vector<int>& side_b,
                             std::vector<std::pair<int, int>>* planes) {
  *planes = match_same_sign(pair, side_a, side_b);
  return planes->size() == std::min(side_a.size(), side_b.size());
}

RealMatrix plane_generator(const SymmetricPairModel& pair, int i, int j) {
  return pair.basis[plane_index(pair, i, j)];
}

void build_cartans(SymmetricPairModel& pair) {
  const int n = pair.p_sig + pair.q_sig;
  std::vector<int> flipped, unflipped;
  for (int i = 0; i < n; ++i) {
    (pair.tau_signs[i] < 0 ? flipped : unflipped).push_back(i);
  }
  std::vector<int> small = flipped, large = unflipped;
  if (small.size() > large.size()) std::swap(small, large);
  const std::size_t rank = small.size();

  // Compact flavor: maximal disjoint rotation planes in q cap k.
  {
    const auto planes = match_same_sign(pair, small, large);
    if (!planes.empty()) {
      std::vector<RealMatrix> generators;
      std::vector<bool> compact;
      for (const auto& [i, j] : planes) {
        generators.push_back(plane_generator(pair, i, j));
        compact.push_back(true);
      }
      pair.cartans.push_back(finalize_cartan(pair, CartanKind::Compact,
                                             generators, compact));
    }
  }

  // Noncompact flavor: maximal disjoint boost planes in q cap p.
  {
    const auto planes = match_opposite_sign(pair, small, large);
    if (!planes.empty()) {
      std::vector<RealMatrix> generators;
      std::vector<bool> compact;
      for (const auto& [i, j] : planes) {
        generators.push_back(plane_generator(pair, i, j));
        compact.push_back(false);
      }
      pair.cartans.push_back(finalize_cartan(pair, CartanKind::Noncompact,
                                             generators, compact));
    }
  }

  // Mixed flavor: one boost plane plus rank-1 rotation planes, all disjoint,
  // exhausting the rank. Exhaustive over the boost choice in ascending order.
  if (rank >= 2) {
    bool built = false;
    for (std::size_t a = 0; a < small.size() && !built; ++a) {
      for (std::size_t b = 0; b < large.size() && !built; ++b) {
        const int i0 = small[a];
        const int j0 = large[b];
        if (epsilon_sign(pair, i0) == epsilon_sign(pair, j0)) continue;
        std::vector<int> rest_small, rest_large;
        for (int i : small) {
          if (i != i0) rest_small.push_back(i);
        }
        for (int j : large) {
          if (j != j0) rest_large.push_back(j);
        }
        std::vector<std::pair<int, int>> rotations;
        if (!full_same_sign_matching(pair, rest_small, rest_large,
                                     &rotations)) {
          continue;
        }
        if (rotations.size() + 1 != rank) continue;
        std::vector<RealMatrix> generators;
        std::vector<bool> compact;
        for (const auto& [i, j] : rotations) {
          generators.push_back(plane_generator(pair, i, j));
          compact.push_back(true);
        }
        generators.push_back(plane_generator(pair, i0, j0));
        compact.push_back(false);
        pair.cartans.push_back(finalize_cartan(pair, CartanKind::Mixed,
                                               generators, compact));
        built = true;
      }
    }
    // Diagonal fallback for the rank-2 alternating pattern: K spans the two
    // rotation planes, P the two cross boosts, with the sign fixed by
    // [K, P] = 0.
    if (!built && rank == 2) {
      const auto rotations = match_same_sign(pair, small, large);
      if (rotations.size() == 2) {
        const auto [i1, j1] = rotations[0];
        const auto [i2, j2] = rotations[1];
        const bool cross_boosts =
            epsilon_sign(pair, i1) != epsilon_sign(pair, j2) &&
            epsilon_sign(pair, i2) != epsilon_sign(pair, j1);
        if (cross_boosts) {
          const RealMatrix K =
              plane_generator(pair, i1, j1) + plane_generator(pair, i2, j2);
          const RealMatrix cross1 = plane_generator(pair, i1, j2);
          const RealMatrix cross2 = plane_generator(pair, i2, j1);
          for (double sign : {1.0, -1.0}) {
            const RealMatrix P = cross1 + sign * cross2;
            if ((K * P - P * K).norm() <= 1e-12) {
              pair.cartans.push_back(finalize_cartan(
                  pair, CartanKind::Mixed, {K, P}, {true, false}));
              built = true;
              break;
            }
          }
        }
      }
    }
  }

  if (pair.cartans.empty()) {
    pair.cartan_error =
        "no Cartan subspace construction available for sign pattern of " +
        pair.family_tag;
  }
}

}  // namespace

SymmetricPairModel build_so_pair(int p_sig, int q_sig,
                                 const std::vector<int>& tau_signs) {
  if (p_sig < 0 || q_sig < 0 || p_sig + q_sig < 3) {
    throw std::invalid_argument(
        "build_so_pair: need p_sig, q_sig >= 0 with p_sig + q_sig >= 3");
  }
  const int n = p_sig + q_sig;
  if (static_cast<int>(tau_signs.size()) != n) {
    throw std::invalid_argument(
        "build_so_pair: tau_signs length must equal p_sig + q_sig");
  }
  int flips = 0;
  for (int s : tau_signs) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("build_so_pair: tau_signs entries must be +-1");
    }
    if (s < 0) ++flips;
  }
  if (flips == 0 || flips == n) {
    throw std::invalid_argument(
        "build_so_pair: involution is trivial (q = 0) for this sign pattern");
  }

  SymmetricPairModel pair;
  pair.p_sig = p_sig;
  pair.q_sig = q_sig;
  pair.tau_signs = tau_signs;
  pair.dim = n * (n - 1) / 2;

  RealVector eps(n);
  for (int i = 0; i < n; ++i) eps[i] = i < p_sig ? 1.0 : -1.0;
  pair.metric = eps.asDiagonal();
  RealVector tau_diag(n);
  for (int i = 0; i < n; ++i) tau_diag[i] = tau_signs[i];
  pair.tau_matrix_defining = tau_diag.asDiagonal();

  pair.basis_planes.reserve(pair.dim);
  pair.basis.reserve(pair.dim);
  pair.theta_basis_signs.reserve(pair.dim);
  pair.tau_basis_signs.reserve(pair.dim);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RealMatrix X = RealMatrix::Zero(n, n);
      X(i, j) = 1.0;
      X(j, i) = -eps[i] * eps[j];
      pair.basis_planes.push_back({i, j});
      pair.basis.push_back(std::move(X));
      const int theta_sign = static_cast<int>(eps[i] * eps[j]);
      const int tau_sign = tau_signs[i] * tau_signs[j];
      pair.theta_basis_signs.push_back(theta_sign);
      pair.tau_basis_signs.push_back(tau_sign);
    }
  }

  RealVector theta_diag_basis(pair.dim), tau_diag_basis(pair.dim);
  for (int k = 0; k < pair.dim; ++k) {
    theta_diag_basis[k] = pair.theta_basis_signs[k];
    tau_diag_basis[k] = pair.tau_basis_signs[k];
  }
  pair.theta_matrix = theta_diag_basis.asDiagonal();
  pair.tau_matrix = tau_diag_basis.asDiagonal();

  for (int k = 0; k < pair.dim; ++k) {
    const bool in_k = pair.theta_basis_signs[k] > 0;
    const bool in_h = pair.tau_basis_signs[k] > 0;
    (in_h ? pair.h_indices : pair.q_indices).push_back(k);
    (in_k ? pair.k_indices : pair.p_indices).push_back(k);
    if (in_h && in_k) pair.hk_indices.push_back(k);
    if (in_h && !in_k) pair.hp_indices.push_back(k);
    if (!in_h && in_k) pair.qk_indices.push_back(k);
    if (!in_h && !in_k) pair.qp_indices.push_back(k);
  }

  pair.killing_scale = static_cast<double>(n - 2);
  pair.killing_gram = RealMatrix::Zero(pair.dim, pair.dim);
  for (int a = 0; a < pair.dim; ++a) {
    for (int b = a; b < pair.dim; ++b) {
      const double value =
          pair.killing_scale * (pair.basis[a] * pair.basis[b]).trace();
      pair.killing_gram(a, b) = value;
      pair.killing_gram(b, a) = value;
    }
  }

  pair.family_tag = make_family_tag(pair);
  pair.is_quadric_model = (flips == 1 && tau_signs[n - 1] < 0 && q_sig >= 1);

  build_cartans(pair);
  return pair;
}

RealVector coordinates(const SymmetricPairModel& pair, const RealMatrix& X) {
  require_finite(X, "coordinates");
  if (X.rows() != pair.metric.rows() || X.cols() != pair.metric.cols()) {
    throw std::invalid_argument("coordinates: wrong matrix dimensions");
  }
  RealVector coeffs(pair.dim);
  for (int k = 0; k < pair.dim; ++k) {
    coeffs[k] = 0.5 * (pair.basis[k].transpose() * X).trace();
  }
  return coeffs;
}

RealMatrix from_coordinates(const SymmetricPairModel& pair,
                            const RealVector& coeffs) {
  if (coeffs.size() != pair.dim) {
    throw std::invalid_argument("from_coordinates: wrong coefficient count");
  }
  RealMatrix X = RealMatrix::Zero(pair.metric.rows(), pair.metric.cols());
  for (int k = 0; k < pair.dim; ++k) {
    if (coeffs[k] != 0.0) X += coeffs[k] * pair.basis[k];
  }
  return X;
}

namespace {

double algebra_residual(const SymmetricPairModel& pair, const RealMatrix& X) {
  return (X.transpose() * pair.metric + pair.metric * X).norm();
}

}  // namespace

bool in_algebra(const SymmetricPairModel& pair, const RealMatrix& X,
                double tol) {
  if (X.rows() != pair.metric.rows() || X.cols() != pair.metric.cols()) {
    return false;
  }
  return algebra_residual(pair, X) <= tol * (1.0 + X.norm());
}

bool in_q(const SymmetricPairModel& pair, const RealMatrix& X, double tol) {
  if (!in_algebra(pair, X, tol)) return false;
  return (tau_apply(pair, X) + X).norm() <= tol * (1.0 + X.norm());
}

bool in_h(const SymmetricPairModel& pair, const RealMatrix& X, double tol) {
  if (!in_algebra(pair, X, tol)) return false;
  return (tau_apply(pair, X) - X).norm() <= tol * (1.0 + X.norm());
}

RealMatrix theta_apply(const SymmetricPairModel& pair, const RealMatrix& X) {
  return pair.metric * X * pair.metric;
}

RealMatrix tau_apply(const SymmetricPairModel& pair, const RealMatrix& X) {
  return pair.tau_matrix_defining * X * pair.tau_matrix_defining;
}

ComplexMatrix tau_apply(const SymmetricPairModel& pair,
                        const ComplexMatrix& g) {
  return pair.tau_matrix_defining.cast<Complex>() * g *
         pair.tau_matrix_defining.cast<Complex>();
}

ComplexMatrix group_inverse(const SymmetricPairModel& pair,
                            const ComplexMatrix& g) {
  return pair.metric.cast<Complex>() * g.transpose() *
         pair.metric.cast<Complex>();
}

RealMatrix group_inverse(const SymmetricPairModel& pair, const RealMatrix& g) {
  return pair.metric * g.transpose() * pair.metric;
}

double group_residual(const SymmetricPairModel& pair, const ComplexMatrix& g) {
  return (g.transpose() * pair.metric.cast<Complex>() * g -
          pair.metric.cast<Complex>())
      .norm();
}

AlgebraElement decompose(const SymmetricPairModel& pair, const RealMatrix& X) {
  require_finite(X, "decompose");
  const double residual = algebra_residual(pair, X);
  if (residual > kTolMembership * (1.0 + X.norm())) {
    throw DomainError("decompose: matrix is not in the algebra (residual " +
                      std::to_string(residual) + ")");
  }
  AlgebraElement element;
  element.matrix = X;
  element.coords = coordinates(pair, X);
  const int n = pair.metric.rows();
  RealMatrix hk = RealMatrix::Zero(n, n), hp = RealMatrix::Zero(n, n);
  RealMatrix qk = RealMatrix::Zero(n, n), qp = RealMatrix::Zero(n, n);
  for (int k = 0; k < pair.dim; ++k) {
    const double c = element.coords[k];
    if (c == 0.0) continue;
    const bool in_k_part = pair.theta_basis_signs[k] > 0;
    const bool in_h_part = pair.tau_basis_signs[k] > 0;
    RealMatrix& target = in_h_part ? (in_k_part ? hk : hp)
                                   : (in_k_part ? qk : qp);
    target += c * pair.basis[k];
  }
  element.part_hk = std::move(hk);
  element.part_hp = std::move(hp);
  element.part_qk = std::move(qk);
  element.part_qp = std::move(qp);
  return element;
}

RealMatrix ad_matrix(const SymmetricPairModel& pair, const RealMatrix& X) {
  require_finite(X, "ad_matrix");
  if (!in_algebra(pair, X, 1e-8)) {
    throw DomainError("ad_matrix: matrix is not in the algebra");
  }
  RealMatrix ad = RealMatrix::Zero(pair.dim, pair.dim);
  for (int k = 0; k < pair.dim; ++k) {
    const RealMatrix bracket = X * pair.basis[k] - pair.basis[k] * X;
    ad.col(k) = coordinates(pair, bracket);
  }
  return ad;
}

double killing_form(const SymmetricPairModel& pair, const RealMatrix& X,
                    const RealMatrix& Y) {
  return pair.killing_scale * (X * Y).trace();
}

const std::vector<CartanSubspaceData>& cartan_subspaces(
    const SymmetricPairModel& pair) {
  if (pair.cartans.empty()) {
    throw UnsupportedModelError("cartan_subspaces: " + pair.cartan_error);
  }
  return pair.cartans;
}

const CartanSubspaceData& cartan_subspace(const SymmetricPairModel& pair,
                                          CartanKind kind) {
  for (const CartanSubspaceData& data : cartan_subspaces(pair)) {
    if (data.kind == kind) return data;
  }
  throw UnsupportedModelError(
      std::string("cartan_subspace: no ") + to_string(kind) +
      " Cartan subspace constructed for " + pair.family_tag);
}

bool has_cartan_subspace(const SymmetricPairModel& pair, CartanKind kind) {
  for (const CartanSubspaceData& data : pair.cartans) {
    if (data.kind == kind) return true;
  }
  return false;
}

const std::vector<RankOneFamily>& rank_one_catalog() {
  static const std::vector<RankOneFamily> catalog = {
      {"so(p+1,q+1)/so(p+1,q)", RestrictedType::A1, true,
       "orthogonal family; matrix builder available"},
      {"su(p+1,q+1)/s(u(p+1,q)xu(1))", RestrictedType::BC1, false,
       "unitary family; metadata only"},
      {"sp(p+1,q+1)/sp(p+1,q)xsp(1)", RestrictedType::BC1, false,
       "quaternionic family; metadata only"},
      {"sl(n+2,R)/gl(n+1,R)", RestrictedType::BC1, false,
       "special linear family; metadata only"},
      {"sp(n+2,R)/sp(n+1,R)xsp(1,R)", RestrictedType::BC1, false,
       "real symplectic family; metadata only"},
      {"f4(-20)/so(8,1)", RestrictedType::BC1, false,
       "exceptional family; metadata only"},
      {"f4(4)/so(5,4)", RestrictedType::BC1, false,
       "exceptional family; metadata only"},
  };
  return catalog;
}

namespace {

RealMatrix sample_on_indices(const SymmetricPairModel& pair,
                             const std::vector<int>& indices,
                             std::mt19937_64& rng, double radius) {
  if (indices.empty()) {
    throw UnsupportedModelError("sampling: requested subspace is zero");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  RealVector coeffs = RealVector::Zero(pair.dim);
  double norm_sq = 0.0;
  for (int k : indices) {
    const double value = normal(rng);
    coeffs[k] = value;
    norm_sq += value * value;
  }
  const double norm = std::sqrt(norm_sq);
  const double scale =
      norm > 0 ? radius * (1.0 - uniform(rng)) / norm : 0.0;
  return from_coordinates(pair, RealVector(scale * coeffs));
}

std::vector<int> all_indices(const SymmetricPairModel& pair) {
  std::vector<int> indices(pair.dim);
  std::iota(indices.begin(), indices.end(), 0);
  return indices;
}

}  // namespace

RealMatrix sample_algebra_element(const SymmetricPairModel& pair,
                                  std::mt19937_64& rng, double radius) {
  return sample_on_indices(pair, all_indices(pair), rng, radius);
}

RealMatrix sample_h_element(const SymmetricPairModel& pair,
                            std::mt19937_64& rng, double radius) {
  return sample_on_indices(pair, pair.h_indices, rng, radius);
}

RealMatrix sample_q_element(const SymmetricPairModel& pair,
                            std::mt19937_64& rng, double radius) {
  return sample_on_indices(pair, pair.q_indices, rng, radius);
}

RealMatrix sample_group_element(const SymmetricPairModel& pair,
                                std::mt19937_64& rng, double radius) {
  return matrix_exp(RealMatrix(sample_algebra_element(pair, rng, radius)));
}

RealMatrix sample_subgroup_element(const SymmetricPairModel& pair,
                                   std::mt19937_64& rng, double radius) {
  return matrix_exp(RealMatrix(sample_h_element(pair, rng, radius)));
}

const char* to_string(CartanKind kind) {
  switch (kind) {
    case CartanKind::Compact:
      return "compact";
    case CartanKind::Noncompact:
      return "noncompact";
    case CartanKind::Mixed:
      return "mixed";
  }
  return "unknown";
}

const char* to_string(RestrictedType type) {
  switch (type) {
    case RestrictedType::A1:
      return "A1";
    case RestrictedType::BC1:
      return "BC1";
    case RestrictedType::Higher:
      return "higher";
  }
  return "unknown";
}

const char* to_string(RootType type) {
  switch (type) {
    case RootType::Real:
      return "real";
    case RootType::Imaginary:
      return "imaginary";
    case RootType::Complex:
      return "complex";
  }
  return "unknown";
}

std::string model_to_json(const SymmetricPairModel& pair) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["p"] = pair.p_sig;
  doc["q"] = pair.q_sig;
  doc["tau_signs"] = pair.tau_signs;
  doc["dim_g"] = pair.dim;
  doc["dim_h"] = pair.h_indices.size();
  doc["dim_q"] = pair.q_indices.size();
  doc["dim_q_cap_k"] = pair.qk_indices.size();
  doc["dim_q_cap_p"] = pair.qp_indices.size();
  doc["family_tag"] = pair.family_tag;
  doc["quadric_model"] = pair.is_quadric_model;
  doc["killing_scale"] = pair.killing_scale;
  nlohmann::json cartans = nlohmann::json::array();
  for (const CartanSubspaceData& data : pair.cartans) {
    nlohmann::json entry;
    entry["kind"] = to_string(data.kind);
    entry["rank"] = data.generators.size();
    entry["restricted_type"] = to_string(data.restricted_type);
    entry["m_alpha"] = data.m_alpha;
    entry["m_2alpha"] = data.m_2alpha;
    entry["m_alpha_plus"] = data.m_alpha_plus;
    entry["m_alpha_minus"] = data.m_alpha_minus;
    entry["m_2alpha_plus"] = data.m_2alpha_plus;
    entry["m_2alpha_minus"] = data.m_2alpha_minus;
    int n_real = 0, n_imaginary = 0, n_complex = 0;
    for (const RestrictedRoot& root : data.roots) {
      switch (root.type) {
        case RootType::Real:
          ++n_real;
          break;
        case RootType::Imaginary:
          ++n_imaginary;
          break;
        case RootType::Complex:
          ++n_complex;
          break;
      }
    }
    entry["roots_real"] = n_real;
    entry["roots_imaginary"] = n_imaginary;
    entry["roots_complex"] = n_complex;
    cartans.push_back(entry);
  }
  doc["cartan_subspaces"] = cartans;
  if (!pair.cartan_error.empty()) doc["cartan_error"] = pair.cartan_error;
  return doc.dump(2);
}

}  // namespace ssx
