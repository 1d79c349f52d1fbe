#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssx/domains.hpp"
#include "ssx/symmetric_pair.hpp"

namespace ssx {

// Point of the complex quadric { z : sum_j eps_j z_j^2 = -1 } with
// eps = (+1 x p, -1 x q); base point x0 = e_n.
struct QuadricPoint {
  int p = 0, q = 0;
  ComplexVector z;
};

enum class OrbitLabel {
  ClosedQ,       // F < -1
  SymmetricGH,   // F = -1, real up to nothing: imaginary part zero
  NilpotentN,    // F = -1, nonzero null imaginary part
  ClosedP,       // -1 < F < 1
  SymmetricGL,   // F = +1, real part zero
  NilpotentM,    // F = +1, nonzero null real part
  ClosedR,       // F > 1
  Unclassified,  // within the F band but neither sub-test is conclusive
};

struct OrbitReport {
  OrbitLabel label = OrbitLabel::Unclassified;
  double parameter = 0.0;  // s (Q), t (P), sigma (R); 0 otherwise
  double F = 0.0;
};

struct SignatureTriple {
  int n_pos = 0, n_neg = 0, n_zero = 0;
};

enum class SliceKind { Q, P, R };
enum class LevelFunction { PlusF, MinusF };

QuadricPoint make_quadric_point(int p, int q, const ComplexVector& z);

// Q(s) = (0,...,0, i sinh s, cosh s); P(t) = (i sin t, 0,...,0, cos t) with
// t in [0, pi/2]; R(sigma) = (i cosh sigma, sinh sigma, 0,...,0).
QuadricPoint slice_point(int p, int q, SliceKind kind, double parameter);

// F(z) = sum_j eps_j |z_j|^2; G-invariant, separates the closed orbits.
double F_invariant(const QuadricPoint& pt);

OrbitReport classify_orbit(const QuadricPoint& pt);

bool in_domain_d(const QuadricPoint& pt);        // F < 1
bool in_domain_d_prime(const QuadricPoint& pt);  // -F < 1

// z = g exp(iX) x0 for the quadric model pair.
QuadricPoint polar_map_point(const SymmetricPairModel& pair,
                             const RealMatrix& g, const RealMatrix& X);

// Hermitian form w -> sum_j eps_j |w_j|^2 (sign per level_function)
// restricted to { w : sum eps_j z_j w_j = 0, sum eps_j conj(z_j) w_j = 0 }.
// Degenerate strata (the two rows dependent, e.g. real points) are rejected.
SignatureTriple levi_signature(const QuadricPoint& pt,
                               LevelFunction level_function);

// c t^2 on the P region, -c s^2 on the Q region, 0 at F = -1; c = p + q - 2.
double transported_energy(const QuadricPoint& pt);

// Complex Hessian of the transported energy on the holomorphic tangent space
// { w : sum eps_j z_j w_j = 0 }; expected (p, q-1, 0) on the G/H side.
SignatureTriple kahler_hessian_signature(const QuadricPoint& pt);

// min |eigenvalue| / max |eigenvalue| of the complex Hessian of
// sqrt(|transported energy|); expected ~0 (one degenerate direction).
double monge_ampere_residual(const QuadricPoint& pt);

// Same ratio for the transported energy itself; the contrast control, bounded
// away from zero on closed-orbit points.
double energy_hessian_residual(const QuadricPoint& pt);

enum class TrialDomain { Omega, OmegaPrime };

struct TrialConfig {
  TrialDomain domain = TrialDomain::Omega;
  long long n_samples = 1000;
  std::uint64_t seed = 0;
  int constructed_equivalents = 100;
  bool inject_witness = false;  // requires a mixed Cartan subspace
};

struct TrialReport {
  std::string domain;
  long long n_samples = 0;
  std::uint64_t seed = 0;
  long long collisions = 0;  // random-pair collisions, all causes
  long long equivalent_collisions = 0;
  long long nonequivalent_collisions = 0;
  long long filtered_by_fourth_power = 0;
  long long rejected_samples = 0;  // domain rejections during sampling
  // Constructed equivalent pairs (g h^{-1}, Ad_h X) vs (g, X).
  long long constructed_pairs = 0;
  long long constructed_collisions = 0;
  long long constructed_certificates_passed = 0;
  // Injected witness pair [e, X], [e, X + gamma]; out-of-domain for omega',
  // so tracked here and never counted in the sample-stream totals.
  bool witness_injected = false;
  bool witness_collided = false;
  bool witness_certificate_failed = false;
  bool witness_fourth_power_passed = false;
  bool witness_translate_in_domain = false;
};

// Samples pairs (g, X) with verified domain membership, maps them through the
// polar map (rank-1 quadric models) or the group-level invariant
// m(z) = z T z^{-1} T (other models), and reports collision counts with
// certificate checks h = g2^{-1} g1, tau(h) = h, Y = Ad_h X.
TrialReport injectivity_trial(const SymmetricPairModel& pair,
                              const TrialConfig& config);

const char* to_string(OrbitLabel label);
const char* to_string(SliceKind kind);

}  // namespace ssx
