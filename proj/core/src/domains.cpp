#include "ssx/domains.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ssx {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_in_q(const SymmetricPairModel& pair, const RealMatrix& X,
                  const char* where) {
  require_finite(X, where);
  if (!in_q(pair, X, 1e-8)) {
    throw DomainError(std::string(where) + ": matrix is not in q");
  }
}

DomainReport threshold_report(const std::vector<double>& values,
                              double threshold) {
  DomainReport report;
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v));
  report.margin = threshold - worst;
  if (report.margin > kTolMargin) {
    report.status = MembershipStatus::In;
  } else if (report.margin < -kTolMargin) {
    report.status = MembershipStatus::Out;
  } else {
    report.status = MembershipStatus::Boundary;
  }
  for (double v : values) {
    if (std::abs(v) >= threshold - kTolMargin) report.offending.push_back(v);
  }
  return report;
}

// Distance from x to the set { pi/2 + k pi : k integer }.
double distance_to_critical(double x) {
  const double r = std::fmod(x - kPi / 2.0, kPi);
  const double wrapped = r < 0 ? r + kPi : r;
  return std::min(wrapped, kPi - wrapped);
}

}  // namespace

DomainReport omega_report(const SymmetricPairModel& pair, const RealMatrix& X) {
  require_in_q(pair, X, "omega_report");
  const SpectrumReport spec = spectrum(ad_matrix(pair, X));
  return threshold_report(spec.real_eigenvalues, kPi / 2.0);
}

bool in_omega(const SymmetricPairModel& pair, const RealMatrix& X) {
  return omega_report(pair, X).status == MembershipStatus::In;
}

DomainReport omega_prime_report(const SymmetricPairModel& pair,
                                const RealMatrix& X) {
  require_in_q(pair, X, "omega_prime_report");
  const SpectrumReport spec = spectrum(ad_matrix(pair, X));
  std::vector<double> real_parts;
  real_parts.reserve(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    real_parts.push_back(spec.eigenvalues[k].real());
  }
  return threshold_report(real_parts, kPi / 4.0);
}

bool in_omega_prime(const SymmetricPairModel& pair, const RealMatrix& X) {
  return omega_prime_report(pair, X).status == MembershipStatus::In;
}

DomainReport omega_zero_report(const SymmetricPairModel& pair,
                               const RealMatrix& A) {
  require_finite(A, "omega_zero_report");
  const CartanSubspaceData& a = cartan_subspace(pair, CartanKind::Noncompact);
  // Membership in the stored noncompact Cartan subspace: the projection onto
  // the generator span reconstructs A.
  RealVector coords_A = coordinates(pair, A);
  RealMatrix projected = RealMatrix::Zero(A.rows(), A.cols());
  for (const AlgebraElement& generator : a.generators) {
    const double gram = generator.coords.squaredNorm();
    const double coefficient = generator.coords.dot(coords_A) / gram;
    projected += coefficient * generator.matrix;
  }
  if ((projected - A).norm() > 1e-8 * (1.0 + A.norm())) {
    throw DomainError(
        "omega_zero_report: element is outside the noncompact Cartan "
        "subspace");
  }
  const SpectrumReport spec = spectrum(ad_matrix(pair, A));
  return threshold_report(spec.real_eigenvalues, kPi / 2.0);
}

bool in_omega_zero(const SymmetricPairModel& pair, const RealMatrix& A) {
  return omega_zero_report(pair, A).status == MembershipStatus::In;
}

RegularityVerdict dphi_regular(const SymmetricPairModel& pair,
                               const RealMatrix& X) {
  require_in_q(pair, X, "dphi_regular");
  RegularityVerdict verdict;

  const RealMatrix ad = ad_matrix(pair, X);
  const SpectrumReport spec = spectrum(ad);

  const DomainReport omega = threshold_report(spec.real_eigenvalues, kPi / 2.0);
  verdict.in_omega = omega.status == MembershipStatus::In;
  std::vector<double> real_parts;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    real_parts.push_back(spec.eigenvalues[k].real());
  }
  verdict.in_omega_prime =
      threshold_report(real_parts, kPi / 4.0).status == MembershipStatus::In;

  // Spectral route: no real eigenvalue congruent to pi/2 mod pi. Distances
  // inside (tol_margin, 2 tol_margin] sit on the edge of the dead band and
  // flag the verdict as indeterminate without changing the boolean answer.
  bool spectral_regular = true;
  for (double lambda : spec.real_eigenvalues) {
    const double distance = distance_to_critical(lambda);
    if (distance <= kTolMargin) {
      verdict.offending_eigenvalues.push_back(lambda);
      spectral_regular = false;
    } else if (distance <= 2.0 * kTolMargin) {
      verdict.indeterminate = true;
    }
  }
  verdict.dphi_regular_spectral = spectral_regular;

  // Cosine route: cos(ad_X) maps h to h; the restriction is the square
  // h-block in basis coordinates. Regularity = trivial kernel.
  const RealMatrix cos_ad = matrix_cos(ad);
  const std::size_t h_dim = pair.h_indices.size();
  RealMatrix h_block(h_dim, h_dim);
  for (std::size_t r = 0; r < h_dim; ++r) {
    for (std::size_t c = 0; c < h_dim; ++c) {
      h_block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cos_ad(pair.h_indices[r], pair.h_indices[c]);
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(h_block);
  const auto& sigma = svd.singularValues();
  verdict.cosine_sigma_max = sigma(0);
  verdict.cosine_sigma_min = sigma(sigma.size() - 1);
  verdict.dphi_regular_cosine =
      verdict.cosine_sigma_min > rank_tolerance(verdict.cosine_sigma_max);

  return verdict;
}

JordanParts jordan_in_q(const SymmetricPairModel& pair, const RealMatrix& X) {
  require_in_q(pair, X, "jordan_in_q");
  const RealJordanDecomposition parts = jordan_chevalley(X);
  const double scale = 1e-8 * (1.0 + X.norm());
  if (!in_q(pair, parts.semisimple, 1e-8) ||
      !in_q(pair, parts.nilpotent, 1e-8)) {
    std::ostringstream msg;
    msg << "jordan_in_q: decomposition parts escaped q (semisimple residual "
        << (tau_apply(pair, parts.semisimple) + parts.semisimple).norm()
        << ", nilpotent residual "
        << (tau_apply(pair, parts.nilpotent) + parts.nilpotent).norm()
        << ", tolerance " << scale << ")";
    throw NumericError(msg.str());
  }
  JordanParts result;
  result.semisimple = decompose(pair, parts.semisimple);
  result.nilpotent = decompose(pair, parts.nilpotent);
  return result;
}

Trit regular_semisimple_sigma_tau(const SymmetricPairModel& pair,
                                  const CartanSubspaceData& cartan,
                                  const RealMatrix& X) {
  require_finite(X, "regular_semisimple_sigma_tau");
  // Coefficients of X over the Cartan generators (plane-orthogonal in
  // basis coordinates), with a residual check.
  const RealVector coords_X = coordinates(pair, X);
  const std::size_t r = cartan.generators.size();
  RealVector coefficients(static_cast<Eigen::Index>(r));
  RealMatrix reconstructed = RealMatrix::Zero(X.rows(), X.cols());
  for (std::size_t k = 0; k < r; ++k) {
    const AlgebraElement& generator = cartan.generators[k];
    const double gram = generator.coords.squaredNorm();
    coefficients[static_cast<Eigen::Index>(k)] =
        generator.coords.dot(coords_X) / gram;
    reconstructed += coefficients[static_cast<Eigen::Index>(k)] *
                     generator.matrix;
  }
  if ((reconstructed - X).norm() > 1e-8 * (1.0 + X.norm())) {
    throw DomainError(
        "regular_semisimple_sigma_tau: element is outside the given Cartan "
        "subspace");
  }

  bool near_band_edge = false;
  for (const RestrictedRoot& root : cartan.roots) {
    Complex value{0.0, 0.0};
    for (std::size_t k = 0; k < r; ++k) {
      value += coefficients[static_cast<Eigen::Index>(k)] *
               root.values[static_cast<Eigen::Index>(k)];
    }
    double excluded_distance = std::numeric_limits<double>::infinity();
    switch (root.type) {
      case RootType::Real: {
        // Excluded locus: Re alpha(X) = 0 mod pi/2.
        const double re = value.real();
        const double m = std::fmod(std::abs(re), kPi / 2.0);
        excluded_distance = std::min(m, kPi / 2.0 - m);
        break;
      }
      case RootType::Imaginary: {
        // Excluded locus: alpha(X) = 0.
        excluded_distance = std::abs(value);
        break;
      }
      case RootType::Complex: {
        // Excluded locus: Re alpha(X) = 0 mod pi/2 or Im alpha(X) = 0.
        const double re = value.real();
        const double m = std::fmod(std::abs(re), kPi / 2.0);
        const double re_distance = std::min(m, kPi / 2.0 - m);
        const double im_distance = std::abs(value.imag());
        excluded_distance = std::min(re_distance, im_distance);
        break;
      }
    }
    if (excluded_distance <= kTolMargin) return Trit::False;
    if (excluded_distance <= 2.0 * kTolMargin) near_band_edge = true;
  }
  return near_band_edge ? Trit::Indeterminate : Trit::True;
}

bool isotropy_condition(const SymmetricPairModel& pair, const RealMatrix& g,
                        const RealMatrix& X) {
  require_finite(g, "isotropy_condition");
  require_in_q(pair, X, "isotropy_condition");
  if (group_residual(pair, g.cast<Complex>()) > 1e-10 * (1.0 + g.squaredNorm())) {
    throw DomainError("isotropy_condition: g is not in the group");
  }
  const Complex i{0.0, 1.0};
  const ComplexMatrix x_squared =
      matrix_exp(ComplexMatrix(2.0 * i * X.cast<Complex>()));
  const ComplexMatrix lhs = g.cast<Complex>() * x_squared;
  const ComplexMatrix rhs =
      x_squared * tau_apply(pair, g).cast<Complex>().eval();
  const double scale = 1.0 + lhs.norm();
  return (lhs - rhs).norm() < 1e-8 * scale;
}

bool fourth_power_necessary(const SymmetricPairModel& pair, const RealMatrix& g,
                            const RealMatrix& X, const RealMatrix& Y) {
  require_finite(g, "fourth_power_necessary");
  require_in_q(pair, X, "fourth_power_necessary");
  require_in_q(pair, Y, "fourth_power_necessary");
  const Complex i{0.0, 1.0};
  const ComplexMatrix x4 = matrix_exp(ComplexMatrix(4.0 * i * X.cast<Complex>()));
  const ComplexMatrix y4 = matrix_exp(ComplexMatrix(4.0 * i * Y.cast<Complex>()));
  const ComplexMatrix conjugated =
      g.cast<Complex>() * x4 * group_inverse(pair, ComplexMatrix(g.cast<Complex>()));
  const double scale = 1.0 + y4.norm();
  return (y4 - conjugated).norm() < 1e-8 * scale;
}

double energy(const SymmetricPairModel& pair, const RealMatrix& X) {
  require_in_q(pair, X, "energy");
  return 0.5 * killing_form(pair, X, X);
}

CollisionWitness higher_rank_collision_witness(
    const SymmetricPairModel& pair) {
  const CartanSubspaceData& mixed = cartan_subspace(pair, CartanKind::Mixed);

  std::vector<int> rotation_slots, boost_slots;
  for (std::size_t k = 0; k < mixed.generators.size(); ++k) {
    (mixed.generator_compact[k] ? rotation_slots : boost_slots)
        .push_back(static_cast<int>(k));
  }
  if (rotation_slots.empty() || boost_slots.empty()) {
    throw UnsupportedModelError(
        "higher_rank_collision_witness: mixed Cartan subspace must have both "
        "compact and noncompact parts");
  }

  CollisionWitness witness;
  const int n = pair.metric.rows();
  const Complex i{0.0, 1.0};

  // gamma: smallest positive multiple of 2 pi on the first boost generator
  // with exp(i gamma) = I.
  const RealMatrix P = mixed.generators[boost_slots[0]].matrix;
  bool gamma_found = false;
  for (int multiple = 1; multiple <= 4 && !gamma_found; ++multiple) {
    const RealMatrix candidate = 2.0 * kPi * multiple * P;
    const ComplexMatrix exp_candidate =
        matrix_exp(ComplexMatrix(i * candidate.cast<Complex>()));
    const double error =
        (exp_candidate - ComplexMatrix::Identity(n, n)).norm();
    if (error < 1e-10) {
      witness.gamma = candidate;
      witness.exp_gamma_error = error;
      gamma_found = true;
    }
  }
  if (!gamma_found) {
    throw NumericError(
        "higher_rank_collision_witness: no lattice multiple of the boost "
        "generator exponentiates to the identity (model bug)");
  }

  // X in c_k: deterministic coefficient search; every imaginary or complex
  // root must have nonzero imaginary value at X, and X must be in omega.
  static const double coefficient_sets[][4] = {
      {0.4, 0.9, 0.65, 1.1},
      {0.3, 0.8, 1.15, 0.55},
      {0.45, 1.05, 0.7, 0.25},
  };
  bool x_found = false;
  for (const double* coefficients : coefficient_sets) {
    RealMatrix X = RealMatrix::Zero(n, n);
    for (std::size_t r = 0; r < rotation_slots.size(); ++r) {
      X += coefficients[r % 4] * mixed.generators[rotation_slots[r]].matrix;
    }
    // Root-value check.
    RealVector coeff_vector =
        RealVector::Zero(static_cast<Eigen::Index>(mixed.generators.size()));
    for (std::size_t r = 0; r < rotation_slots.size(); ++r) {
      coeff_vector[rotation_slots[r]] = coefficients[r % 4];
    }
    bool roots_ok = true;
    for (const RestrictedRoot& root : mixed.roots) {
      if (root.type == RootType::Real) continue;
      Complex value{0.0, 0.0};
      for (Eigen::Index k = 0; k < coeff_vector.size(); ++k) {
        value += coeff_vector[k] * root.values[k];
      }
      if (std::abs(value.imag()) <= kTolMargin) {
        roots_ok = false;
        break;
      }
    }
    if (!roots_ok) continue;
    if (omega_report(pair, X).status != MembershipStatus::In) continue;
    witness.X = X;
    x_found = true;
    break;
  }
  if (!x_found) {
    throw NumericError(
        "higher_rank_collision_witness: bounded coefficient search found no "
        "valid X in c_k (model bug)");
  }

  witness.tau_negates_gamma =
      (tau_apply(pair, witness.gamma) + witness.gamma).norm() <
      1e-12 * (1.0 + witness.gamma.norm());
  witness.theta_negates_gamma =
      (theta_apply(pair, witness.gamma) + witness.gamma).norm() <
      1e-12 * (1.0 + witness.gamma.norm());
  for (const RestrictedRoot& root : mixed.roots) {
    if (root.type == RootType::Complex) witness.has_complex_roots = true;
  }

  const RealMatrix translate = witness.X + witness.gamma;
  const ComplexMatrix exp_x =
      matrix_exp(ComplexMatrix(i * witness.X.cast<Complex>()));
  const ComplexMatrix exp_translate =
      matrix_exp(ComplexMatrix(i * translate.cast<Complex>()));
  witness.exp_match_error = (exp_x - exp_translate).norm();

  witness.x_omega = omega_report(pair, witness.X).status;
  witness.x_gamma_omega = omega_report(pair, translate).status;
  witness.x_omega_prime = omega_prime_report(pair, witness.X).status;
  witness.x_gamma_omega_prime = omega_prime_report(pair, translate).status;

  witness.energy_x = energy(pair, witness.X);
  witness.energy_x_gamma = energy(pair, translate);
  witness.energy_separation =
      std::abs(witness.energy_x - witness.energy_x_gamma);

  witness.clause_exp_match = witness.exp_match_error < 1e-10;
  witness.clause_both_in_omega =
      witness.x_omega == MembershipStatus::In &&
      witness.x_gamma_omega == MembershipStatus::In;
  witness.clause_energy_separated = witness.energy_separation > 1e-6;
  witness.clause_translate_outside_omega_prime =
      witness.x_gamma_omega_prime == MembershipStatus::Out;
  witness.all_clauses =
      witness.clause_exp_match && witness.clause_both_in_omega &&
      witness.clause_energy_separated &&
      witness.clause_translate_outside_omega_prime;
  return witness;
}

const char* to_string(MembershipStatus status) {
  switch (status) {
    case MembershipStatus::In:
      return "in";
    case MembershipStatus::Boundary:
      return "boundary";
    case MembershipStatus::Out:
      return "out";
  }
  return "unknown";
}

const char* to_string(Trit value) {
  switch (value) {
    case Trit::False:
      return "false";
    case Trit::True:
      return "true";
    case Trit::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

}  // namespace ssx
