#pragma once

#include <random>
#include <string>
#include <vector>

#include "ssx/matrix_core.hpp"
#include "ssx/numeric.hpp"

namespace ssx {

// One plane generator X_{ij} = E_ij - eps_i eps_j E_ji, 0-based, i < j.
struct BasisPlane {
  int i = 0;
  int j = 0;
};

enum class CartanKind { Compact, Noncompact, Mixed };
enum class RestrictedType { A1, BC1, Higher };
enum class RootType { Real, Imaginary, Complex };

struct RestrictedRoot {
  ComplexVector values;  // alpha(g_k) for each Cartan generator g_k
  int multiplicity = 0;  // complex dimension of the root space
  RootType type = RootType::Real;
};

struct AlgebraElement {
  RealMatrix matrix;
  RealVector coords;  // coefficients over the plane basis
  RealMatrix part_hk, part_hp, part_qk, part_qp;
};

struct CartanSubspaceData {
  CartanKind kind = CartanKind::Compact;
  std::vector<AlgebraElement> generators;  // commuting, in q, plane-normalized
  std::vector<bool> generator_compact;     // true: q cap k, false: q cap p
  RestrictedType restricted_type = RestrictedType::Higher;
  // Rank-1 multiplicity data (zero for Higher).
  int m_alpha = 0;
  int m_2alpha = 0;
  int m_alpha_plus = 0, m_alpha_minus = 0;
  int m_2alpha_plus = 0, m_2alpha_minus = 0;
  std::vector<RestrictedRoot> roots;  // nonzero restricted roots
};

struct SymmetricPairModel {
  int p_sig = 0, q_sig = 0;    // J = diag(+1 x p_sig, -1 x q_sig)
  std::vector<int> tau_signs;  // entries +-1, length p_sig + q_sig
  int dim = 0;                 // n(n-1)/2

  std::vector<BasisPlane> basis_planes;  // lexicographic
  std::vector<RealMatrix> basis;
  RealMatrix metric;      // J
  RealMatrix tau_matrix_defining;  // T = diag(tau_signs)

  // Involutions as linear maps on g over the stored basis (diagonal +-1).
  RealMatrix theta_matrix;
  RealMatrix tau_matrix;
  std::vector<int> theta_basis_signs;  // +1: k, -1: p
  std::vector<int> tau_basis_signs;    // +1: h, -1: q

  RealMatrix killing_gram;      // B(b_i, b_j) on the basis
  double killing_scale = 0.0;   // B(X, Y) = killing_scale * tr(XY)

  std::vector<int> h_indices, q_indices, k_indices, p_indices;
  std::vector<int> hk_indices, hp_indices, qk_indices, qp_indices;

  std::string family_tag;
  bool is_quadric_model = false;  // single flip at the last index, eps = -1

  std::vector<CartanSubspaceData> cartans;
  std::string cartan_error;  // nonempty when construction is unsupported
};

// Orthogonal model with theta(X) = JXJ and tau(X) = TXT. Rejects
// p_sig + q_sig < 3, malformed sign vectors, and sign vectors with trivial q.
SymmetricPairModel build_so_pair(int p_sig, int q_sig,
                                 const std::vector<int>& tau_signs);

RealVector coordinates(const SymmetricPairModel& pair, const RealMatrix& X);
RealMatrix from_coordinates(const SymmetricPairModel& pair,
                            const RealVector& coeffs);

bool in_algebra(const SymmetricPairModel& pair, const RealMatrix& X,
                double tol = kTolMembership);
bool in_q(const SymmetricPairModel& pair, const RealMatrix& X,
          double tol = kTolMembership);
bool in_h(const SymmetricPairModel& pair, const RealMatrix& X,
          double tol = kTolMembership);

RealMatrix theta_apply(const SymmetricPairModel& pair, const RealMatrix& X);
RealMatrix tau_apply(const SymmetricPairModel& pair, const RealMatrix& X);
ComplexMatrix tau_apply(const SymmetricPairModel& pair, const ComplexMatrix& g);

// Inverse inside the complexified orthogonal group: g^{-1} = J g^T J.
ComplexMatrix group_inverse(const SymmetricPairModel& pair,
                            const ComplexMatrix& g);
RealMatrix group_inverse(const SymmetricPairModel& pair, const RealMatrix& g);

// Residual of the defining identity g^T J g = J.
double group_residual(const SymmetricPairModel& pair, const ComplexMatrix& g);

AlgebraElement decompose(const SymmetricPairModel& pair, const RealMatrix& X);

RealMatrix ad_matrix(const SymmetricPairModel& pair, const RealMatrix& X);

double killing_form(const SymmetricPairModel& pair, const RealMatrix& X,
                    const RealMatrix& Y);

// All constructed Cartan subspace flavors. Throws UnsupportedModelError when
// the sign pattern is outside the supported constructions.
const std::vector<CartanSubspaceData>& cartan_subspaces(
    const SymmetricPairModel& pair);
const CartanSubspaceData& cartan_subspace(const SymmetricPairModel& pair,
                                          CartanKind kind);
bool has_cartan_subspace(const SymmetricPairModel& pair, CartanKind kind);

struct RankOneFamily {
  std::string pair_name;
  RestrictedType restricted_type;
  bool supported_model;  // orthogonal families have matrix builders
  std::string note;
};

const std::vector<RankOneFamily>& rank_one_catalog();

// Random elements with direction uniform on the coordinate sphere of the
// given subspace and radius uniform in (0, radius].
RealMatrix sample_algebra_element(const SymmetricPairModel& pair,
                                  std::mt19937_64& rng, double radius);
RealMatrix sample_h_element(const SymmetricPairModel& pair,
                            std::mt19937_64& rng, double radius);
RealMatrix sample_q_element(const SymmetricPairModel& pair,
                            std::mt19937_64& rng, double radius);
// exp of a random algebra (resp. h) element; radius <= 2 keeps the sample in
// the identity component.
RealMatrix sample_group_element(const SymmetricPairModel& pair,
                                std::mt19937_64& rng, double radius = 2.0);
RealMatrix sample_subgroup_element(const SymmetricPairModel& pair,
                                   std::mt19937_64& rng, double radius = 1.0);

/// Versioned JSON document: signature, sign pattern, dimensions, family tag,
// Cartan flavor summaries.
std::string model_to_json(const SymmetricPairModel& pair);

const char* to_string(CartanKind kind);
const char* to_string(RestrictedType type);
const char* to_string(RootType type);

}  // namespace ssx
