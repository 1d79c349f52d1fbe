#pragma once

#include <string>
#include <vector>

#include "ssx/symmetric_pair.hpp"

namespace ssx {

enum class MembershipStatus { In, Boundary, Out };
enum class Trit { False, True, Indeterminate };

struct DomainReport {
  MembershipStatus status = MembershipStatus::Out;
  double margin = 0.0;  // threshold minus the worst offender (positive: inside)
  std::vector<double> offending;  // eigenvalues at or past the threshold
};

// omega: every real eigenvalue of ad_X satisfies |lambda| < pi/2.
DomainReport omega_report(const SymmetricPairModel& pair, const RealMatrix& X);
bool in_omega(const SymmetricPairModel& pair, const RealMatrix& X);

// omega': every eigenvalue of ad_X satisfies |Re lambda| < pi/4.
DomainReport omega_prime_report(const SymmetricPairModel& pair,
                                const RealMatrix& X);
bool in_omega_prime(const SymmetricPairModel& pair, const RealMatrix& X);

// omega_0 on the noncompact Cartan subspace: restricted root values at A,
// read from the real spectrum of ad_A, all < pi/2 in absolute value.
DomainReport omega_zero_report(const SymmetricPairModel& pair,
                               const RealMatrix& A);
bool in_omega_zero(const SymmetricPairModel& pair, const RealMatrix& A);

struct RegularityVerdict {
  bool in_omega = false;
  bool in_omega_prime = false;
  bool dphi_regular_spectral = false;
  bool dphi_regular_cosine = false;
  bool indeterminate = false;  // an eigenvalue within the dead band
  std::vector<double> offending_eigenvalues;
  double cosine_sigma_min = 0.0;
  double cosine_sigma_max = 0.0;
};

// Spectral route: no real eigenvalue of ad_X congruent to pi/2 mod pi.
// Cosine route: cos(ad_X) restricted to the h-subspace (an endomorphism of h)
// has trivial kernel.
RegularityVerdict dphi_regular(const SymmetricPairModel& pair,
                               const RealMatrix& X);

struct JordanParts {
  AlgebraElement semisimple;
  AlgebraElement nilpotent;
};

// Jordan decomposition of the defining matrix; asserts both parts land in g
// and in q (hard error otherwise).
JordanParts jordan_in_q(const SymmetricPairModel& pair, const RealMatrix& X);

// Exclusion clauses on restricted root values alpha(X) for X in the given
// Cartan subspace: real roots with Re alpha(X) = 0 mod pi/2, imaginary roots
// with alpha(X) = 0, complex roots with (Re alpha(X) = 0 mod pi/2 or
// Im alpha(X) = 0). True iff every clause is avoided with margin.
Trit regular_semisimple_sigma_tau(const SymmetricPairModel& pair,
                                  const CartanSubspaceData& cartan,
                                  const RealMatrix& X);

// ||g exp(2iX) - exp(2iX) tau(g)|| < 1e-8 * scale.
bool isotropy_condition(const SymmetricPairModel& pair, const RealMatrix& g,
                        const RealMatrix& X);

// exp(4iY) = g exp(4iX) g^{-1} within tolerance; cheap necessary filter.
bool fourth_power_necessary(const SymmetricPairModel& pair, const RealMatrix& g,
                            const RealMatrix& X, const RealMatrix& Y);

// E(X) = (1/2) B(X, X).
double energy(const SymmetricPairModel& pair, const RealMatrix& X);

struct CollisionWitness {
  RealMatrix X;      // in c_k, nonzero imaginary parts on all im/complex roots
  RealMatrix gamma;  // in c_p with exp(i gamma) = I
  double exp_match_error = 0.0;  // ||exp(iX) - exp(i(X+gamma))||
  double exp_gamma_error = 0.0;  // ||exp(i gamma) - I||
  bool tau_negates_gamma = false;
  bool theta_negates_gamma = false;
  bool has_complex_roots = false;
  MembershipStatus x_omega = MembershipStatus::Out;
  MembershipStatus x_gamma_omega = MembershipStatus::Out;
  MembershipStatus x_omega_prime = MembershipStatus::Out;
  MembershipStatus x_gamma_omega_prime = MembershipStatus::Out;
  double energy_x = 0.0;
  double energy_x_gamma = 0.0;
  double energy_separation = 0.0;
  // Clause verdicts in the order they are asserted.
  bool clause_exp_match = false;
  bool clause_both_in_omega = false;
  bool clause_energy_separated = false;
  bool clause_translate_outside_omega_prime = false;
  bool all_clauses = false;
};

// Collision pair (X, X+gamma) on a model with a mixed Cartan subspace:
// exp(iX) = exp(i(X+gamma)) while the energy invariant separates the two.
CollisionWitness higher_rank_collision_witness(const SymmetricPairModel& pair);

const char* to_string(MembershipStatus status);
const char* to_string(Trit value);

}  // namespace ssx
