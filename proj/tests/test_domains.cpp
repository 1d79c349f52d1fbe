#include <cmath>
#include <random>

#include "doctest.h"
#include "ssx/domains.hpp"
#include "ssx/matrix_core.hpp"
#include "ssx/rng.hpp"
#include "ssx/symmetric_pair.hpp"
#include "support/test_helpers.hpp"

namespace {

using ssx::CartanKind;
using ssx::Complex;
using ssx::ComplexMatrix;
using ssx::MembershipStatus;
using ssx::RealMatrix;
using ssx::SymmetricPairModel;
using ssx::Trit;
using ssx::testing::plane;

constexpr double kPi = 3.14159265358979323846;

SymmetricPairModel quadric_so32() {
  return ssx::build_so_pair(3, 2, {1, 1, 1, 1, -1});
}

SymmetricPairModel rank2_so22() {
  return ssx::build_so_pair(2, 2, {-1, 1, -1, 1});
}

SymmetricPairModel rank3_so33() {
  return ssx::build_so_pair(3, 3, {-1, -1, 1, -1, 1, 1});
}

RealMatrix conjugate(const RealMatrix& g, const RealMatrix& X) {
  return g * X * g.inverse();
}

}  // namespace

TEST_SUITE("domains") {

TEST_CASE("omega membership around the boost threshold") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);

  const ssx::DomainReport inside = ssx::omega_report(pair, RealMatrix(1.5 * A0));
  CHECK(inside.status == MembershipStatus::In);
  CHECK(inside.margin == doctest::Approx(kPi / 2.0 - 1.5).epsilon(1e-10));
  CHECK(inside.offending.empty());

  const ssx::DomainReport outside =
      ssx::omega_report(pair, RealMatrix(1.6 * A0));
  CHECK(outside.status == MembershipStatus::Out);
  CHECK(outside.margin == doctest::Approx(kPi / 2.0 - 1.6).epsilon(1e-9));
  CHECK(outside.offending.size() == 6);  // +-1.6, each with multiplicity 3
  for (double v : outside.offending) {
    CHECK(std::abs(std::abs(v) - 1.6) <= 1e-9);
  }

  CHECK(ssx::in_omega(pair, RealMatrix(0.3 * A0)));
  CHECK_FALSE(ssx::in_omega(pair, RealMatrix(2.0 * A0)));

  const ssx::DomainReport boundary = ssx::omega_report(
      pair, RealMatrix((kPi / 2.0 + 0.5 * ssx::kTolMargin) * A0));
  CHECK(boundary.status == MembershipStatus::Boundary);
}

TEST_CASE("omega prime membership around the quarter pi threshold") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);

  CHECK(ssx::in_omega_prime(pair, RealMatrix(0.7 * A0)));
  CHECK_FALSE(ssx::in_omega_prime(pair, RealMatrix(0.8 * A0)));

  const ssx::DomainReport at_one = ssx::omega_prime_report(pair, A0);
  CHECK(at_one.status == MembershipStatus::Out);
  CHECK(at_one.margin == doctest::Approx(kPi / 4.0 - 1.0).epsilon(1e-10));
}

TEST_CASE("rotations stay in omega at any scale") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix K = plane(pair, 3, 4);  // rotation in q cap k
  CHECK(ssx::in_omega(pair, RealMatrix(10.0 * K)));
  CHECK(ssx::in_omega_prime(pair, RealMatrix(10.0 * K)));
}

TEST_CASE("omega prime is contained in omega") {
  const SymmetricPairModel pair = rank2_so22();
  auto rng = ssx::stream_engine(20, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const RealMatrix X = ssx::sample_q_element(pair, rng, 1.2);
    if (ssx::in_omega_prime(pair, X)) {
      CHECK(ssx::in_omega(pair, X));
    }
  }
}

TEST_CASE("omega reports are invariant under subgroup conjugation") {
  const SymmetricPairModel pair = quadric_so32();
  auto rng = ssx::stream_engine(21, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix X = ssx::sample_q_element(pair, rng, 1.8);
    const RealMatrix h = ssx::sample_subgroup_element(pair, rng, 0.9);
    const ssx::DomainReport base = ssx::omega_report(pair, X);
    const ssx::DomainReport moved = ssx::omega_report(pair, conjugate(h, X));
    CHECK(base.status == moved.status);
    CHECK(std::abs(base.margin - moved.margin) <= 1e-9);
  }
}

TEST_CASE("subgroup translates of rotations plus small boosts stay in omega") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);
  const RealMatrix K = plane(pair, 3, 4);
  auto rng = ssx::stream_engine(22, 0);
  std::uniform_real_distribution<double> boost_scale(-1.4, 1.4);
  std::uniform_real_distribution<double> rot_scale(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const RealMatrix X = boost_scale(rng) * A0 + rot_scale(rng) * K;
    const RealMatrix h = ssx::sample_subgroup_element(pair, rng, 1.0);
    CHECK(ssx::in_omega(pair, conjugate(h, X)));
  }
}

TEST_CASE("omega zero accepts the noncompact Cartan line and rejects others") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);
  CHECK(ssx::in_omega_zero(pair, RealMatrix(1.5 * A0)));
  CHECK_FALSE(ssx::in_omega_zero(pair, RealMatrix(1.6 * A0)));
  const RealMatrix K = plane(pair, 3, 4);
  CHECK_THROWS_AS(ssx::omega_zero_report(pair, K), ssx::DomainError);
  CHECK_THROWS_AS(ssx::omega_zero_report(pair, RealMatrix(A0 + 0.5 * K)),
                  ssx::DomainError);
}

TEST_CASE("dphi regularity at reference points") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);

  const ssx::RegularityVerdict at_zero =
      ssx::dphi_regular(pair, RealMatrix(RealMatrix::Zero(5, 5)));
  CHECK(at_zero.dphi_regular_spectral);
  CHECK(at_zero.dphi_regular_cosine);
  CHECK_FALSE(at_zero.indeterminate);

  const ssx::RegularityVerdict regular =
      ssx::dphi_regular(pair, RealMatrix(0.7 * A0));
  CHECK(regular.dphi_regular_spectral);
  CHECK(regular.dphi_regular_cosine);
  CHECK(regular.in_omega);
  CHECK(regular.in_omega_prime);
  CHECK(regular.cosine_sigma_min ==
        doctest::Approx(std::cos(0.7)).epsilon(1e-9));

  const ssx::RegularityVerdict critical =
      ssx::dphi_regular(pair, RealMatrix((kPi / 2.0) * A0));
  CHECK_FALSE(critical.dphi_regular_spectral);
  CHECK_FALSE(critical.dphi_regular_cosine);
  CHECK_FALSE(critical.offending_eigenvalues.empty());
  CHECK(critical.cosine_sigma_min <= 1e-10);

  const ssx::RegularityVerdict near_band = ssx::dphi_regular(
      pair, RealMatrix((kPi / 2.0 + 1.5 * ssx::kTolMargin) * A0));
  CHECK(near_band.indeterminate);
}

TEST_CASE("nilpotent elements of q are dphi regular") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix N = plane(pair, 0, 4) + plane(pair, 3, 4);
  const ssx::SpectrumReport spec = ssx::spectrum(N);
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    CHECK(std::abs(spec.eigenvalues[k]) <= 1e-7);
  }
  const ssx::RegularityVerdict verdict = ssx::dphi_regular(pair, N);
  CHECK(verdict.dphi_regular_spectral);
  CHECK(verdict.dphi_regular_cosine);
}

TEST_CASE("spectral and cosine regularity routes agree on random samples") {
  for (const SymmetricPairModel& pair : {quadric_so32(), rank2_so22()}) {
    auto rng = ssx::stream_engine(23, 0);
    std::uniform_real_distribution<double> radius(0.2, 2.4);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const RealMatrix X = ssx::sample_q_element(pair, rng, radius(rng));
      const ssx::RegularityVerdict verdict = ssx::dphi_regular(pair, X);
      if (verdict.indeterminate) continue;
      ++checked;
      CHECK(verdict.dphi_regular_spectral == verdict.dphi_regular_cosine);
    }
    CHECK(checked >= 390);
  }
}

TEST_CASE("jordan_in_q recovers constructed semisimple plus nilpotent data") {
  // so(2,2) with alternating flips: a compact Cartan element plus a
  // commuting square-zero matrix in q.
  const SymmetricPairModel pair = rank2_so22();
  const RealMatrix K0 = plane(pair, 0, 1) + plane(pair, 2, 3);
  const RealMatrix M = plane(pair, 0, 1) - plane(pair, 2, 3) +
                       plane(pair, 0, 3) - plane(pair, 1, 2);
  REQUIRE((M * M).norm() <= 1e-14);
  REQUIRE((K0 * M - M * K0).norm() <= 1e-14);
  REQUIRE(ssx::in_q(pair, K0));
  REQUIRE(ssx::in_q(pair, M));

  auto rng = ssx::stream_engine(24, 0);
  const RealMatrix h = ssx::sample_subgroup_element(pair, rng, 0.7);
  const RealMatrix X = conjugate(h, RealMatrix(0.8 * K0 + 0.6 * M));
  const ssx::JordanParts parts = ssx::jordan_in_q(pair, X);
  CHECK((parts.semisimple.matrix - conjugate(h, RealMatrix(0.8 * K0))).norm() <=
        1e-6);
  CHECK((parts.nilpotent.matrix - conjugate(h, RealMatrix(0.6 * M))).norm() <=
        1e-6);
  CHECK(ssx::in_q(pair, parts.semisimple.matrix, 1e-7));
  CHECK(ssx::in_q(pair, parts.nilpotent.matrix, 1e-7));
}

TEST_CASE("jordan_in_q on a boost plus commuting nilpotent") {
  const SymmetricPairModel pair = ssx::build_so_pair(3, 2, {-1, 1, -1, 1, 1});
  const RealMatrix S = plane(pair, 2, 3);
  const RealMatrix N = plane(pair, 0, 1) + plane(pair, 0, 4);
  REQUIRE(ssx::in_q(pair, S));
  REQUIRE(ssx::in_q(pair, N));
  REQUIRE((S * N - N * S).norm() <= 1e-14);
  REQUIRE((N * N * N).norm() <= 1e-14);

  const RealMatrix X = 0.9 * S + 0.7 * N;
  const ssx::JordanParts parts = ssx::jordan_in_q(pair, X);
  CHECK((parts.semisimple.matrix - 0.9 * S).norm() <= 1e-6);
  CHECK((parts.nilpotent.matrix - 0.7 * N).norm() <= 1e-6);
}

TEST_CASE("regularity verdicts match between an element and its semisimple part") {
  const SymmetricPairModel pair = rank2_so22();
  const RealMatrix K0 = plane(pair, 0, 1) + plane(pair, 2, 3);
  const RealMatrix M = plane(pair, 0, 1) - plane(pair, 2, 3) +
                       plane(pair, 0, 3) - plane(pair, 1, 2);
  auto rng = ssx::stream_engine(25, 0);
  std::uniform_real_distribution<double> a_scale(0.2, 1.3);
  std::uniform_real_distribution<double> b_scale(-0.8, 0.8);
  for (int trial = 0; trial < 30; ++trial) {
    const RealMatrix h = ssx::sample_subgroup_element(pair, rng, 0.7);
    const double a = a_scale(rng);
    const double b = b_scale(rng);
    const RealMatrix X = conjugate(h, RealMatrix(a * K0 + b * M));
    const ssx::JordanParts parts = ssx::jordan_in_q(pair, X);
    const ssx::RegularityVerdict full = ssx::dphi_regular(pair, X);
    const ssx::RegularityVerdict semi =
        ssx::dphi_regular(pair, parts.semisimple.matrix);
    if (full.indeterminate || semi.indeterminate) continue;
    CHECK(full.dphi_regular_spectral == semi.dphi_regular_spectral);
    CHECK(full.dphi_regular_cosine == semi.dphi_regular_cosine);
  }
}

TEST_CASE("regular semisimple trit on the noncompact Cartan") {
  const SymmetricPairModel pair = quadric_so32();
  const ssx::CartanSubspaceData& cartan =
      ssx::cartan_subspace(pair, CartanKind::Noncompact);
  const RealMatrix A0 = plane(pair, 0, 4);

  CHECK(ssx::regular_semisimple_sigma_tau(pair, cartan, RealMatrix(0.7 * A0)) ==
        Trit::True);
  CHECK(ssx::regular_semisimple_sigma_tau(
            pair, cartan, RealMatrix(RealMatrix::Zero(5, 5))) == Trit::False);
  CHECK(ssx::regular_semisimple_sigma_tau(
            pair, cartan, RealMatrix((kPi / 2.0) * A0)) == Trit::False);
  CHECK(ssx::regular_semisimple_sigma_tau(
            pair, cartan,
            RealMatrix((kPi / 2.0 + 1.5 * ssx::kTolMargin) * A0)) ==
        Trit::Indeterminate);

  const ssx::CartanSubspaceData& compact =
      ssx::cartan_subspace(pair, CartanKind::Compact);
  const RealMatrix K = plane(pair, 3, 4);
  CHECK(ssx::regular_semisimple_sigma_tau(pair, compact, RealMatrix(0.5 * K)) ==
        Trit::True);
  CHECK_THROWS_AS(ssx::regular_semisimple_sigma_tau(pair, compact, A0),
                  ssx::DomainError);
}

TEST_CASE("isotropy condition holds exactly for commuting subgroup elements") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);
  const RealMatrix X = 0.8 * A0;

  const RealMatrix Z = plane(pair, 1, 2);  // h element disjoint from A0
  const RealMatrix g = ssx::matrix_exp(RealMatrix(0.7 * Z));
  CHECK(ssx::isotropy_condition(pair, g, X));

  const RealMatrix W = plane(pair, 0, 1);  // shares an index with A0
  const RealMatrix g_bad = ssx::matrix_exp(RealMatrix(0.5 * W));
  CHECK_FALSE(ssx::isotropy_condition(pair, g_bad, X));

  CHECK(ssx::isotropy_condition(
      pair, RealMatrix(RealMatrix::Identity(5, 5)), X));
}

TEST_CASE("fourth power filter accepts equivariant pairs and rejects others") {
  const SymmetricPairModel pair = quadric_so32();
  auto rng = ssx::stream_engine(26, 0);
  const RealMatrix X = ssx::sample_q_element(pair, rng, 0.6);
  CHECK(ssx::fourth_power_necessary(
      pair, RealMatrix(RealMatrix::Identity(5, 5)), X, X));

  const RealMatrix h = ssx::sample_subgroup_element(pair, rng, 0.8);
  const RealMatrix Y = conjugate(h, X);
  CHECK(ssx::fourth_power_necessary(pair, h, X, Y));

  const RealMatrix A0 = plane(pair, 0, 4);
  CHECK_FALSE(ssx::fourth_power_necessary(
      pair, RealMatrix(RealMatrix::Identity(5, 5)), RealMatrix(0.8 * A0),
      RealMatrix(1.1 * A0)));
}

TEST_CASE("energy carries the Killing signature") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix A0 = plane(pair, 0, 4);
  const RealMatrix K = plane(pair, 3, 4);
  CHECK(ssx::energy(pair, A0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(ssx::energy(pair, K) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(ssx::energy(pair, RealMatrix(0.5 * A0)) ==
        doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("collision witness on the rank two model fails only the omega clause") {
  const SymmetricPairModel pair = rank2_so22();
  const ssx::CollisionWitness witness =
      ssx::higher_rank_collision_witness(pair);

  CHECK(witness.clause_exp_match);
  CHECK(witness.exp_match_error <= 1e-10);
  CHECK(witness.exp_gamma_error <= 1e-10);
  CHECK(witness.tau_negates_gamma);
  CHECK(witness.theta_negates_gamma);
  CHECK_FALSE(witness.has_complex_roots);

  CHECK(witness.x_omega == MembershipStatus::In);
  CHECK(witness.x_gamma_omega == MembershipStatus::Out);
  CHECK_FALSE(witness.clause_both_in_omega);

  CHECK(witness.clause_energy_separated);
  CHECK(witness.clause_translate_outside_omega_prime);
  CHECK_FALSE(witness.all_clauses);

  CHECK(witness.energy_x == doctest::Approx(-0.64).epsilon(1e-9));
  CHECK(witness.energy_separation ==
        doctest::Approx(16.0 * kPi * kPi).epsilon(1e-9));
}

TEST_CASE("collision witness on the rank three model passes every clause") {
  const SymmetricPairModel pair = rank3_so33();
  const ssx::CollisionWitness witness =
      ssx::higher_rank_collision_witness(pair);

  CHECK(witness.clause_exp_match);
  CHECK(witness.clause_both_in_omega);
  CHECK(witness.clause_energy_separated);
  CHECK(witness.clause_translate_outside_omega_prime);
  CHECK(witness.all_clauses);

  CHECK(witness.has_complex_roots);
  CHECK(witness.x_omega == MembershipStatus::In);
  CHECK(witness.x_gamma_omega == MembershipStatus::In);
  CHECK(witness.x_omega_prime == MembershipStatus::In);
  CHECK(witness.x_gamma_omega_prime == MembershipStatus::Out);

  CHECK(witness.exp_match_error <= 1e-10);
  CHECK(witness.energy_x == doctest::Approx(-3.88).epsilon(1e-9));
  CHECK(witness.energy_separation ==
        doctest::Approx(16.0 * kPi * kPi).epsilon(1e-9));
  CHECK(witness.energy_x_gamma - witness.energy_x ==
        doctest::Approx(16.0 * kPi * kPi).epsilon(1e-9));
}

TEST_CASE("collision witness requires a mixed Cartan subspace") {
  CHECK_THROWS_AS(ssx::higher_rank_collision_witness(quadric_so32()),
                  ssx::UnsupportedModelError);
}

TEST_CASE("membership and trit labels print stable names") {
  CHECK(std::string(ssx::to_string(MembershipStatus::In)) == "in");
  CHECK(std::string(ssx::to_string(MembershipStatus::Boundary)) == "boundary");
  CHECK(std::string(ssx::to_string(MembershipStatus::Out)) == "out");
  CHECK(std::string(ssx::to_string(Trit::True)) == "true");
  CHECK(std::string(ssx::to_string(Trit::False)) == "false");
  CHECK(std::string(ssx::to_string(Trit::Indeterminate)) == "indeterminate");
}

}  // TEST_SUITE
