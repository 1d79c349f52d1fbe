#include "ssx/hyperboloid.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssx/matrix_core.hpp"
#include "ssx/parallel.hpp"
#include "ssx/rng.hpp"

namespace ssx {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOrbitBand = 1e-8;       // width of the F = +-1 bands
constexpr double kQuadricResidual = 1e-9;
constexpr double kSmallParameter = 1e-5;  // switch to series limits below this

RealVector epsilon_vector(int p, int q) {
  RealVector eps(p + q);
  for (int j = 0; j < p + q; ++j) eps[j] = j < p ? 1.0 : -1.0;
  return eps;
}

Complex quadric_value(const QuadricPoint& pt) {
  const RealVector eps = epsilon_vector(pt.p, pt.q);
  Complex total{0.0, 0.0};
  for (Eigen::Index j = 0; j < pt.z.size(); ++j) {
    total += eps[j] * pt.z[j] * pt.z[j];
  }
  return total;
}

// Orthonormal basis of { w : row^T w = 0 } for a set of constraint rows,
// via full SVD. Throws when the rows are not independent.
ComplexMatrix constraint_null_basis(const ComplexMatrix& rows,
                                    const char* where) {
  Eigen::JacobiSVD<ComplexMatrix> svd(rows, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Eigen::Index r = rows.rows();
  const double tol = rank_tolerance(sigma(0));
  if (sigma(r - 1) <= tol) {
    throw DomainError(std::string(where) +
                      ": constraint rows are dependent (degenerate stratum)");
  }
  return svd.matrixV().rightCols(rows.cols() - r);
}

SignatureTriple hermitian_signature(const ComplexMatrix& form) {
  ComplexMatrix hermitized = 0.5 * (form + form.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitized);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_signature: eigensolver failed");
  }
  const RealVector lambda = solver.eigenvalues();
  const double band = 1e-8 * (lambda.cwiseAbs().maxCoeff() + 1.0);
  SignatureTriple triple;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda[k] > band) {
      ++triple.n_pos;
    } else if (lambda[k] < -band) {
      ++triple.n_neg;
    } else {
      ++triple.n_zero;
    }
  }
  return triple;
}

// Hessian of a radial potential W(F): W' sum eps |w|^2 + W'' |sum eps zbar w|^2
// restricted to the holomorphic quadric tangent { w : sum eps z w = 0 }.
ComplexMatrix radial_hessian(const QuadricPoint& pt, double w_prime,
                             double w_double_prime) {
  const RealVector eps = epsilon_vector(pt.p, pt.q);
  ComplexMatrix row(1, pt.z.size());
  for (Eigen::Index j = 0; j < pt.z.size(); ++j) row(0, j) = eps[j] * pt.z[j];
  const ComplexMatrix N = constraint_null_basis(row, "radial_hessian");

  ComplexVector eps_zbar(pt.z.size());
  for (Eigen::Index j = 0; j < pt.z.size(); ++j) {
    eps_zbar[j] = eps[j] * std::conj(pt.z[j]);
  }
  // Plain transpose: the pairing sum eps zbar_j w_j is bilinear in w.
  const ComplexVector a = N.transpose() * eps_zbar;

  ComplexMatrix base = N.adjoint() * eps.asDiagonal().toDenseMatrix().cast<Complex>() * N;
  ComplexMatrix rank_one = a.conjugate() * a.transpose();
  return w_prime * base + w_double_prime * rank_one;
}

struct RadialCoefficients {
  double w_prime = 0.0;
  double w_double_prime = 0.0;
};

// W = c t^2 (P region), W = -c s^2 (Q region), with W' = dW/dF.
RadialCoefficients energy_coefficients(const OrbitReport& orbit, double c) {
  RadialCoefficients out;
  switch (orbit.label) {
    case OrbitLabel::ClosedP: {
      const double t = orbit.parameter;
      if (t < kSmallParameter) {
        out.w_prime = c / 2.0;
        out.w_double_prime = c / 6.0;
      } else {
        const double s2 = std::sin(2.0 * t);
        out.w_prime = c * t / s2;
        out.w_double_prime =
            c * (s2 - 2.0 * t * std::cos(2.0 * t)) / (2.0 * s2 * s2 * s2);
      }
      break;
    }
    case OrbitLabel::ClosedQ: {
      const double s = std::abs(orbit.parameter);
      if (s < kSmallParameter) {
        out.w_prime = c / 2.0;
        out.w_double_prime = c / 6.0;
      } else {
        const double sh2 = std::sinh(2.0 * s);
        out.w_prime = c * s / sh2;
        out.w_double_prime =
            c * (2.0 * s * std::cosh(2.0 * s) - sh2) / (2.0 * sh2 * sh2 * sh2);
      }
      break;
    }
    case OrbitLabel::SymmetricGH: {
      out.w_prime = c / 2.0;
      out.w_double_prime = c / 6.0;
      break;
    }
    default:
      throw DomainError(
          "energy_coefficients: point is outside the polar-map image");
  }
  return out;
}

// W = sqrt(|energy|) = sqrt(c) t (P region), sqrt(c) s (Q region).
RadialCoefficients sqrt_energy_coefficients(const OrbitReport& orbit,
                                            double c) {
  RadialCoefficients out;
  const double root_c = std::sqrt(c);
  switch (orbit.label) {
    case OrbitLabel::ClosedP: {
      const double t = orbit.parameter;
      if (t < 1e-6) {
        throw DomainError(
            "sqrt_energy_coefficients: parameter too close to the center");
      }
      const double s2 = std::sin(2.0 * t);
      out.w_prime = root_c / (2.0 * s2);
      out.w_double_prime = -root_c * std::cos(2.0 * t) / (2.0 * s2 * s2 * s2);
      break;
    }
    case OrbitLabel::ClosedQ: {
      const double s = std::abs(orbit.parameter);
      if (s < 1e-6) {
        throw DomainError(
            "sqrt_energy_coefficients: parameter too close to the center");
      }
      const double sh2 = std::sinh(2.0 * s);
      out.w_prime = -root_c / (2.0 * sh2);
      out.w_double_prime =
          -root_c * std::cosh(2.0 * s) / (2.0 * sh2 * sh2 * sh2);
      break;
    }
    default:
      throw DomainError(
          "sqrt_energy_coefficients: closed P or Q orbit required");
  }
  return out;
}

double eigenvalue_contrast(const ComplexMatrix& form) {
  ComplexMatrix hermitized = 0.5 * (form + form.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitized);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalue_contrast: eigensolver failed");
  }
  const RealVector lambda = solver.eigenvalues().cwiseAbs();
  return lambda.minCoeff() / lambda.maxCoeff();
}

}  // namespace

QuadricPoint make_quadric_point(int p, int q, const ComplexVector& z) {
  if (p < 2 || q < 2) {
    throw DomainError("make_quadric_point: signature (p, q) needs p, q >= 2");
  }
  if (z.size() != p + q) {
    throw DomainError("make_quadric_point: coordinate length mismatch");
  }
  QuadricPoint pt;
  pt.p = p;
  pt.q = q;
  pt.z = z;
  if (std::abs(quadric_value(pt) + Complex{1.0, 0.0}) > kQuadricResidual) {
    throw DomainError("make_quadric_point: point is not on the quadric");
  }
  return pt;
}

QuadricPoint slice_point(int p, int q, SliceKind kind, double parameter) {
  const int n = p + q;
  ComplexVector z = ComplexVector::Zero(n);
  const Complex i{0.0, 1.0};
  switch (kind) {
    case SliceKind::Q:
      z[n - 2] = i * std::sinh(parameter);
      z[n - 1] = std::cosh(parameter);
      break;
    case SliceKind::P:
      if (parameter < 0.0 || parameter > kPi / 2.0) {
        throw DomainError("slice_point: P parameter must lie in [0, pi/2]");
      }
      if (parameter == kPi / 2.0) {
        z[0] = i;  // exact boundary point
      } else {
        z[0] = i * std::sin(parameter);
        z[n - 1] = std::cos(parameter);
      }
      break;
    case SliceKind::R:
      z[0] = i * std::cosh(parameter);
      z[1] = std::sinh(parameter);
      break;
  }
  return make_quadric_point(p, q, z);
}

double F_invariant(const QuadricPoint& pt) {
  const RealVector eps = epsilon_vector(pt.p, pt.q);
  double total = 0.0;
  for (Eigen::Index j = 0; j < pt.z.size(); ++j) {
    total += eps[j] * std::norm(pt.z[j]);
  }
  return total;
}

OrbitReport classify_orbit(const QuadricPoint& pt) {
  OrbitReport report;
  report.F = F_invariant(pt);
  const double F = report.F;
  if (F < -1.0 - kOrbitBand) {
    report.label = OrbitLabel::ClosedQ;
    report.parameter = -std::acosh(-F) / 2.0;
    return report;
  }
  if (F <= -1.0 + kOrbitBand) {
    const double tol_v = 1e-8 * (1.0 + pt.z.norm());
    const double v_norm = pt.z.imag().norm();
    if (v_norm <= tol_v) {
      report.label = OrbitLabel::SymmetricGH;
    } else if (v_norm > 10.0 * tol_v) {
      report.label = OrbitLabel::NilpotentN;
    } else {
      report.label = OrbitLabel::Unclassified;
    }
    return report;
  }
  if (F < 1.0 - kOrbitBand) {
    report.label = OrbitLabel::ClosedP;
    report.parameter = std::acos(std::sqrt((1.0 - F) / 2.0));
    return report;
  }
  if (F <= 1.0 + kOrbitBand) {
    const double tol_u = 1e-8 * (1.0 + pt.z.norm());
    const double u_norm = pt.z.real().norm();
    if (u_norm <= tol_u) {
      report.label = OrbitLabel::SymmetricGL;
    } else if (u_norm > 10.0 * tol_u) {
      report.label = OrbitLabel::NilpotentM;
    } else {
      report.label = OrbitLabel::Unclassified;
    }
    return report;
  }
  report.label = OrbitLabel::ClosedR;
  report.parameter = std::acosh(F) / 2.0;
  return report;
}

bool in_domain_d(const QuadricPoint& pt) { return F_invariant(pt) < 1.0; }

bool in_domain_d_prime(const QuadricPoint& pt) {
  return -F_invariant(pt) < 1.0;
}

QuadricPoint polar_map_point(const SymmetricPairModel& pair,
                             const RealMatrix& g, const RealMatrix& X) {
  if (!pair.is_quadric_model) {
    throw DomainError(
        "polar_map_point: pair does not carry the quadric base point");
  }
  require_finite(g, "polar_map_point");
  if (group_residual(pair, g.cast<Complex>()) >
      1e-10 * (1.0 + g.squaredNorm())) {
    throw DomainError("polar_map_point: g is not in the group");
  }
  if (!in_q(pair, X, 1e-8)) {
    throw DomainError("polar_map_point: X is not in q");
  }
  const int n = pair.metric.rows();
  const Complex i{0.0, 1.0};
  ComplexVector x0 = ComplexVector::Zero(n);
  x0[n - 1] = Complex{1.0, 0.0};
  const ComplexVector z =
      g.cast<Complex>() *
      (matrix_exp(ComplexMatrix(i * X.cast<Complex>())) * x0);
  return make_quadric_point(pair.p_sig, pair.q_sig, z);
}

SignatureTriple levi_signature(const QuadricPoint& pt,
                               LevelFunction level_function) {
  const RealVector eps = epsilon_vector(pt.p, pt.q);
  const Eigen::Index n = pt.z.size();
  ComplexMatrix rows(2, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    rows(0, j) = eps[j] * pt.z[j];
    rows(1, j) = eps[j] * std::conj(pt.z[j]);
  }
  const ComplexMatrix N = constraint_null_basis(rows, "levi_signature");
  const double sign = level_function == LevelFunction::PlusF ? 1.0 : -1.0;
  const ComplexMatrix form =
      sign * (N.adjoint() *
              eps.asDiagonal().toDenseMatrix().cast<Complex>() * N);
  return hermitian_signature(form);
}

double transported_energy(const QuadricPoint& pt) {
  const OrbitReport orbit = classify_orbit(pt);
  const double c = static_cast<double>(pt.p + pt.q - 2);
  switch (orbit.label) {
    case OrbitLabel::ClosedP:
      return c * orbit.parameter * orbit.parameter;
    case OrbitLabel::ClosedQ:
      return -c * orbit.parameter * orbit.parameter;
    case OrbitLabel::SymmetricGH:
      return 0.0;
    default:
      throw DomainError(
          "transported_energy: point is outside the polar-map image");
  }
}

SignatureTriple kahler_hessian_signature(const QuadricPoint& pt) {
  const OrbitReport orbit = classify_orbit(pt);
  const double c = static_cast<double>(pt.p + pt.q - 2);
  const RadialCoefficients coeff = energy_coefficients(orbit, c);
  return hermitian_signature(
      radial_hessian(pt, coeff.w_prime, coeff.w_double_prime));
}

double monge_ampere_residual(const QuadricPoint& pt) {
  const OrbitReport orbit = classify_orbit(pt);
  const double c = static_cast<double>(pt.p + pt.q - 2);
  const RadialCoefficients coeff = sqrt_energy_coefficients(orbit, c);
  return eigenvalue_contrast(
      radial_hessian(pt, coeff.w_prime, coeff.w_double_prime));
}

double energy_hessian_residual(const QuadricPoint& pt) {
  const OrbitReport orbit = classify_orbit(pt);
  const double c = static_cast<double>(pt.p + pt.q - 2);
  const RadialCoefficients coeff = energy_coefficients(orbit, c);
  return eigenvalue_contrast(
      radial_hessian(pt, coeff.w_prime, coeff.w_double_prime));
}

namespace {

struct TrialSample {
  RealMatrix g;
  RealMatrix X;
  ComplexVector image;
  long long rejected = 0;
};

bool sample_in_domain(const SymmetricPairModel& pair, TrialDomain domain,
                      const RealMatrix& X) {
  if (domain == TrialDomain::Omega) {
    return omega_report(pair, X).status == MembershipStatus::In;
  }
  return omega_prime_report(pair, X).status == MembershipStatus::In;
}

ComplexVector trial_image(const SymmetricPairModel& pair, const RealMatrix& g,
                          const RealMatrix& X) {
  const Complex i{0.0, 1.0};
  if (pair.is_quadric_model) {
    return polar_map_point(pair, g, X).z;
  }
  // Group-level invariant m(z) = z tau(z)^{-1} for z = g exp(iX).
  const ComplexMatrix z =
      g.cast<Complex>() * matrix_exp(ComplexMatrix(i * X.cast<Complex>()));
  const ComplexMatrix m = z * group_inverse(pair, tau_apply(pair, z));
  return ComplexVector(Eigen::Map<const ComplexVector>(m.data(), m.size()));
}

// X sampled in q until it lands inside the trial domain; counts rejections.
RealMatrix sample_domain_element(const SymmetricPairModel& pair,
                                 TrialDomain domain, std::mt19937_64& rng,
                                 long long& rejected) {
  const double radius = domain == TrialDomain::Omega ? 1.2 : 0.6;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RealMatrix X = sample_q_element(pair, rng, radius);
    if (sample_in_domain(pair, domain, X)) return X;
    ++rejected;
  }
  throw NumericError(
      "injectivity_trial: rejection sampling failed to land in the domain");
}

bool equivalence_certificate(const SymmetricPairModel& pair,
                             const RealMatrix& g1, const RealMatrix& X1,
                             const RealMatrix& g2, const RealMatrix& X2) {
  const RealMatrix h = group_inverse(pair, g2) * g1;
  const double scale = 1.0 + h.norm();
  if (group_residual(pair, h.cast<Complex>()) > 1e-7 * scale) return false;
  if ((tau_apply(pair, h) - h).norm() > 1e-7 * scale) return false;
  const RealMatrix transported = h * X1 * group_inverse(pair, h);
  return (transported - X2).norm() < 1e-7 * (1.0 + X2.norm());
}

}  // namespace

TrialReport injectivity_trial(const SymmetricPairModel& pair,
                              const TrialConfig& config) {
  if (config.domain == TrialDomain::Omega) {
    const bool rank_one =
        has_cartan_subspace(pair, CartanKind::Noncompact) &&
        cartan_subspace(pair, CartanKind::Noncompact).generators.size() == 1;
    if (!pair.is_quadric_model || !rank_one) {
      throw UnsupportedModelError(
          "injectivity_trial: the omega domain requires a rank-one quadric "
          "model");
    }
  }

  TrialReport report;
  report.domain =
      config.domain == TrialDomain::Omega ? "omega" : "omega_prime";
  report.n_samples = config.n_samples;
  report.seed = config.seed;

  const long long n = config.n_samples;
  std::vector<TrialSample> samples(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
    std::mt19937_64 rng =
        stream_engine(config.seed, static_cast<std::uint64_t>(k));
    TrialSample& sample = samples[k];
    sample.X = sample_domain_element(pair, config.domain, rng,
                                     sample.rejected);
    sample.g = sample_group_element(pair, rng, 2.0);
    sample.image = trial_image(pair, sample.g, sample.X);
  });
  for (const TrialSample& sample : samples) {
    report.rejected_samples += sample.rejected;
  }

  // Collision scan: sort by the real part of the first image coordinate and
  // compare within a sliding window sized by the collision tolerance.
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return samples[a].image[0].real() < samples[b].image[0].real();
  });
  double max_norm = 0.0;
  for (const TrialSample& sample : samples) {
    max_norm = std::max(max_norm, sample.image.norm());
  }
  const double window = 1e-8 * (1.0 + max_norm);
  for (std::size_t a = 0; a < order.size(); ++a) {
    const TrialSample& first = samples[order[a]];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const TrialSample& second = samples[order[b]];
      if (second.image[0].real() - first.image[0].real() > window) break;
      const double tol = 1e-8 * (1.0 + first.image.norm());
      if ((first.image - second.image).norm() >= tol) continue;
      ++report.collisions;
      if (equivalence_certificate(pair, first.g, first.X, second.g,
                                  second.X)) {
        ++report.equivalent_collisions;
      } else {
        const RealMatrix h = group_inverse(pair, second.g) * first.g;
        if (!fourth_power_necessary(pair, h, first.X, second.X)) {
          ++report.filtered_by_fourth_power;
        } else {
          ++report.nonequivalent_collisions;
        }
      }
    }
  }

  // Constructed equivalent pairs: (g, X) vs (g h0^{-1}, Ad_{h0} X).
  for (int k = 0; k < config.constructed_equivalents; ++k) {
    std::mt19937_64 rng = stream_engine(
        config.seed ^ 0x5bf03635f0a5b1c5ull, static_cast<std::uint64_t>(k));
    long long rejected = 0;
    const RealMatrix X = sample_domain_element(pair, config.domain, rng,
                                               rejected);
    const RealMatrix g = sample_group_element(pair, rng, 2.0);
    const RealMatrix h0 = sample_subgroup_element(pair, rng, 1.0);
    const RealMatrix g2 = g * group_inverse(pair, h0);
    const RealMatrix X2 = h0 * X * group_inverse(pair, h0);
    ++report.constructed_pairs;
    const ComplexVector image1 = trial_image(pair, g, X);
    const ComplexVector image2 = trial_image(pair, g2, X2);
    if ((image1 - image2).norm() < 1e-8 * (1.0 + image1.norm())) {
      ++report.constructed_collisions;
    }
    if (equivalence_certificate(pair, g, X, g2, X2)) {
      ++report.constructed_certificates_passed;
    }
  }

  if (config.inject_witness) {
    if (!has_cartan_subspace(pair, CartanKind::Mixed)) {
      throw UnsupportedModelError(
          "injectivity_trial: witness injection requires a mixed Cartan "
          "subspace");
    }
    const CollisionWitness witness = higher_rank_collision_witness(pair);
    const RealMatrix identity =
        RealMatrix::Identity(pair.metric.rows(), pair.metric.rows());
    const RealMatrix translate = witness.X + witness.gamma;
    report.witness_injected = true;
    const ComplexVector image1 = trial_image(pair, identity, witness.X);
    const ComplexVector image2 = trial_image(pair, identity, translate);
    report.witness_collided =
        (image1 - image2).norm() < 1e-8 * (1.0 + image1.norm());
    report.witness_certificate_failed = !equivalence_certificate(
        pair, identity, witness.X, identity, translate);
    report.witness_fourth_power_passed =
        fourth_power_necessary(pair, identity, witness.X, translate);
    report.witness_translate_in_domain =
        sample_in_domain(pair, config.domain, translate);
  }
  return report;
}

const char* to_string(OrbitLabel label) {
  switch (label) {
    case OrbitLabel::ClosedQ:
      return "closed_q";
    case OrbitLabel::SymmetricGH:
      return "symmetric_gh";
    case OrbitLabel::NilpotentN:
      return "nilpotent_n";
    case OrbitLabel::ClosedP:
      return "closed_p";
    case OrbitLabel::SymmetricGL:
      return "symmetric_gl";
    case OrbitLabel::NilpotentM:
      return "nilpotent_m";
    case OrbitLabel::ClosedR:
      return "closed_r";
    case OrbitLabel::Unclassified:
      return "unclassified";
  }
  return "unknown";
}

const char* to_string(SliceKind kind) {
  switch (kind) {
    case SliceKind::Q:
      return "Q";
    case SliceKind::P:
      return "P";
    case SliceKind::R:
      return "R";
  }
  return "?";
}

}  // namespace ssx
