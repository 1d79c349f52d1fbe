#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ssx/rng.hpp"
#include "ssx/symmetric_pair.hpp"
#include "support/test_helpers.hpp"

namespace {

using ssx::CartanKind;
using ssx::CartanSubspaceData;
using ssx::RealMatrix;
using ssx::RestrictedType;
using ssx::RootType;
using ssx::SymmetricPairModel;
using ssx::testing::plane;

RealMatrix bracket(const RealMatrix& X, const RealMatrix& Y) {
  return X * Y - Y * X;
}

SymmetricPairModel quadric_so32() {
  return ssx::build_so_pair(3, 2, {1, 1, 1, 1, -1});
}

SymmetricPairModel quadric_so22() {
  return ssx::build_so_pair(2, 2, {1, 1, 1, -1});
}

SymmetricPairModel rank2_so22() {
  return ssx::build_so_pair(2, 2, {-1, 1, -1, 1});
}

SymmetricPairModel rank3_so33() {
  return ssx::build_so_pair(3, 3, {-1, -1, 1, -1, 1, 1});
}

int count_roots(const CartanSubspaceData& cartan, RootType type) {
  int count = 0;
  for (const auto& root : cartan.roots) {
    if (root.type == type) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("symmetric_pair") {

TEST_CASE("dimension bookkeeping") {
  const SymmetricPairModel so32 = quadric_so32();
  CHECK(so32.dim == 10);
  CHECK(so32.basis.size() == 10);
  CHECK(so32.q_indices.size() == 4);
  CHECK(so32.h_indices.size() == 6);
  CHECK(so32.qp_indices.size() == 3);
  CHECK(so32.qk_indices.size() == 1);
  CHECK(so32.is_quadric_model);
  CHECK(so32.family_tag == "so(3,2)/so(3,1)");

  const SymmetricPairModel rank2 = rank2_so22();
  CHECK(rank2.dim == 6);
  CHECK(rank2.q_indices.size() == 4);
  CHECK(rank2.h_indices.size() == 2);
  CHECK_FALSE(rank2.is_quadric_model);
  CHECK(rank2.family_tag == "so(2,2)/so(1,1)+so(1,1)");

  CHECK(quadric_so22().is_quadric_model);
  CHECK(rank3_so33().family_tag == "so(3,3)/so(1,2)+so(2,1)");
}

TEST_CASE("build rejects malformed sign patterns") {
  CHECK_THROWS_AS(ssx::build_so_pair(1, 1, {1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(ssx::build_so_pair(3, 2, {1, 1, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ssx::build_so_pair(3, 2, {1, 1, 1, 2, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ssx::build_so_pair(3, 2, {1, 1, 1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ssx::build_so_pair(3, 2, {-1, -1, -1, -1, -1}),
                  std::invalid_argument);
}

TEST_CASE("basis matrices satisfy the defining relation and are orthogonal") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix& J = pair.metric;
  for (std::size_t a = 0; a < pair.basis.size(); ++a) {
    const RealMatrix& X = pair.basis[a];
    CHECK((X.transpose() * J + J * X).norm() <= 1e-14);
    for (std::size_t b = 0; b < pair.basis.size(); ++b) {
      const double inner = (pair.basis[a].transpose() * pair.basis[b]).trace();
      CHECK(inner == doctest::Approx(a == b ? 2.0 : 0.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("coordinates round trip") {
  const SymmetricPairModel pair = rank2_so22();
  auto rng = ssx::stream_engine(7, 0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  ssx::RealVector coeffs(pair.dim);
  for (int k = 0; k < pair.dim; ++k) coeffs[k] = uniform(rng);
  const RealMatrix X = ssx::from_coordinates(pair, coeffs);
  CHECK((ssx::coordinates(pair, X) - coeffs).norm() <= 1e-13);
  CHECK(ssx::in_algebra(pair, X));
}

TEST_CASE("bracket closure and involution homomorphisms") {
  const SymmetricPairModel pair = quadric_so32();
  auto rng = ssx::stream_engine(8, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix X = ssx::sample_algebra_element(pair, rng, 1.0);
    const RealMatrix Y = ssx::sample_algebra_element(pair, rng, 1.0);
    const RealMatrix Z = bracket(X, Y);
    CHECK(ssx::in_algebra(pair, Z, 1e-8));
    CHECK((ssx::theta_apply(pair, Z) -
           bracket(ssx::theta_apply(pair, X), ssx::theta_apply(pair, Y)))
              .norm() <= 1e-12 * (1.0 + Z.norm()));
    CHECK((ssx::tau_apply(pair, Z) -
           bracket(ssx::tau_apply(pair, X), ssx::tau_apply(pair, Y)))
              .norm() <= 1e-12 * (1.0 + Z.norm()));
  }
}

TEST_CASE("involutions square to the identity and commute") {
  const SymmetricPairModel pair = rank3_so33();
  auto rng = ssx::stream_engine(9, 0);
  const RealMatrix X = ssx::sample_algebra_element(pair, rng, 1.0);
  CHECK((ssx::theta_apply(pair, ssx::theta_apply(pair, X)) - X).norm() <=
        1e-14);
  CHECK((ssx::tau_apply(pair, ssx::tau_apply(pair, X)) - X).norm() <= 1e-14);
  const RealMatrix tt = ssx::tau_apply(pair, ssx::theta_apply(pair, X));
  const RealMatrix theta_tau = ssx::theta_apply(pair, ssx::tau_apply(pair, X));
  CHECK((tt - theta_tau).norm() <= 1e-14);

  const RealMatrix H = ssx::sample_h_element(pair, rng, 1.0);
  CHECK((ssx::tau_apply(pair, H) - H).norm() <= 1e-13);
  const RealMatrix Q = ssx::sample_q_element(pair, rng, 1.0);
  CHECK((ssx::tau_apply(pair, Q) + Q).norm() <= 1e-13);
}

TEST_CASE("killing form matches the trace form and the ad-trace form") {
  for (const SymmetricPairModel& pair :
       {quadric_so32(), rank2_so22(), rank3_so33()}) {
    const int n = pair.p_sig + pair.q_sig;
    CHECK(pair.killing_scale == doctest::Approx(n - 2).epsilon(1e-14));
    auto rng = ssx::stream_engine(10, 0);
    for (int trial = 0; trial < 5; ++trial) {
      const RealMatrix X = ssx::sample_algebra_element(pair, rng, 1.0);
      const RealMatrix Y = ssx::sample_algebra_element(pair, rng, 1.0);
      const double direct = ssx::killing_form(pair, X, Y);
      const double via_trace = (n - 2) * (X * Y).trace();
      const double via_ad =
          (ssx::ad_matrix(pair, X) * ssx::ad_matrix(pair, Y)).trace();
      CHECK(direct == doctest::Approx(via_trace).epsilon(1e-11));
      CHECK(direct == doctest::Approx(via_ad).epsilon(1e-9));
    }
  }
}

TEST_CASE("killing form is ad invariant") {
  const SymmetricPairModel pair = quadric_so32();
  auto rng = ssx::stream_engine(11, 0);
  const RealMatrix X = ssx::sample_algebra_element(pair, rng, 1.0);
  const RealMatrix Y = ssx::sample_algebra_element(pair, rng, 1.0);
  const RealMatrix Z = ssx::sample_algebra_element(pair, rng, 1.0);
  const double lhs = ssx::killing_form(pair, bracket(X, Y), Z);
  const double rhs = -ssx::killing_form(pair, Y, bracket(X, Z));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("four part decomposition is consistent") {
  const SymmetricPairModel pair = rank3_so33();
  auto rng = ssx::stream_engine(12, 0);
  const RealMatrix X = ssx::sample_algebra_element(pair, rng, 1.3);
  const ssx::AlgebraElement parts = ssx::decompose(pair, X);
  const RealMatrix resum =
      parts.part_hk + parts.part_hp + parts.part_qk + parts.part_qp;
  CHECK((resum - X).norm() <= 1e-12 * (1.0 + X.norm()));
  // Eigenspace membership of each part.
  CHECK((ssx::theta_apply(pair, parts.part_qk) - parts.part_qk).norm() <=
        1e-13);
  CHECK((ssx::tau_apply(pair, parts.part_qk) + parts.part_qk).norm() <= 1e-13);
  CHECK((ssx::theta_apply(pair, parts.part_hp) + parts.part_hp).norm() <=
        1e-13);
  CHECK((ssx::tau_apply(pair, parts.part_hp) - parts.part_hp).norm() <= 1e-13);
}

TEST_CASE("group inverse and residual") {
  const SymmetricPairModel pair = quadric_so32();
  auto rng = ssx::stream_engine(13, 0);
  const RealMatrix g = ssx::sample_group_element(pair, rng, 1.5);
  CHECK(ssx::group_residual(pair, g.cast<ssx::Complex>()) <= 1e-9);
  const RealMatrix product = g * ssx::group_inverse(pair, g);
  CHECK((product - RealMatrix::Identity(5, 5)).norm() <= 1e-10);
}

TEST_CASE("quadric model Cartan flavors carry the stated multiplicities") {
  const SymmetricPairModel pair = quadric_so32();
  REQUIRE(ssx::has_cartan_subspace(pair, CartanKind::Noncompact));
  REQUIRE(ssx::has_cartan_subspace(pair, CartanKind::Compact));
  CHECK_FALSE(ssx::has_cartan_subspace(pair, CartanKind::Mixed));

  const CartanSubspaceData& boost =
      ssx::cartan_subspace(pair, CartanKind::Noncompact);
  CHECK(boost.generators.size() == 1);
  CHECK_FALSE(boost.generator_compact[0]);
  CHECK(boost.restricted_type == RestrictedType::A1);
  CHECK(boost.m_alpha == 3);
  CHECK(boost.m_2alpha == 0);
  CHECK(boost.m_alpha_plus == 2);
  CHECK(boost.m_alpha_minus == 1);
  CHECK(count_roots(boost, RootType::Real) == 2);
  CHECK(count_roots(boost, RootType::Imaginary) == 0);

  const CartanSubspaceData& rotation =
      ssx::cartan_subspace(pair, CartanKind::Compact);
  CHECK(rotation.generators.size() == 1);
  CHECK(rotation.generator_compact[0]);
  CHECK(rotation.m_alpha == 3);
  CHECK(count_roots(rotation, RootType::Imaginary) == 2);
  CHECK(count_roots(rotation, RootType::Real) == 0);

  // Multiplicities tile q minus the Cartan line.
  CHECK(boost.m_alpha_plus + boost.m_2alpha_plus ==
        static_cast<int>(pair.qp_indices.size()) - 1);
  CHECK(boost.m_alpha_minus + boost.m_2alpha_minus ==
        static_cast<int>(pair.qk_indices.size()));

  const SymmetricPairModel small = quadric_so22();
  const CartanSubspaceData& small_boost =
      ssx::cartan_subspace(small, CartanKind::Noncompact);
  CHECK(small_boost.m_alpha == 2);
  CHECK(small_boost.m_alpha_plus == 1);
  CHECK(small_boost.m_alpha_minus == 1);
}

TEST_CASE("rank two model carries compact, noncompact, and mixed flavors") {
  const SymmetricPairModel pair = rank2_so22();
  REQUIRE(ssx::has_cartan_subspace(pair, CartanKind::Compact));
  REQUIRE(ssx::has_cartan_subspace(pair, CartanKind::Noncompact));
  REQUIRE(ssx::has_cartan_subspace(pair, CartanKind::Mixed));

  const CartanSubspaceData& compact =
      ssx::cartan_subspace(pair, CartanKind::Compact);
  CHECK(compact.generators.size() == 2);
  CHECK(compact.restricted_type == RestrictedType::Higher);
  CHECK(count_roots(compact, RootType::Imaginary) == 4);
  CHECK(count_roots(compact, RootType::Real) == 0);

  const CartanSubspaceData& noncompact =
      ssx::cartan_subspace(pair, CartanKind::Noncompact);
  CHECK(noncompact.generators.size() == 2);
  CHECK(count_roots(noncompact, RootType::Real) == 4);
  CHECK(count_roots(noncompact, RootType::Imaginary) == 0);

  const CartanSubspaceData& mixed =
      ssx::cartan_subspace(pair, CartanKind::Mixed);
  CHECK(mixed.generators.size() == 2);
  int compact_generators = 0;
  for (bool flag : mixed.generator_compact) compact_generators += flag ? 1 : 0;
  CHECK(compact_generators == 1);
  CHECK(count_roots(mixed, RootType::Real) == 2);
  CHECK(count_roots(mixed, RootType::Imaginary) == 2);
  CHECK(count_roots(mixed, RootType::Complex) == 0);
}

TEST_CASE("rank three model has a mixed flavor with complex roots") {
  const SymmetricPairModel pair = rank3_so33();
  REQUIRE(ssx::has_cartan_subspace(pair, CartanKind::Mixed));
  const CartanSubspaceData& mixed =
      ssx::cartan_subspace(pair, CartanKind::Mixed);
  CHECK(mixed.generators.size() == 3);
  int compact_generators = 0;
  for (bool flag : mixed.generator_compact) compact_generators += flag ? 1 : 0;
  CHECK(compact_generators == 2);
  CHECK(count_roots(mixed, RootType::Complex) > 0);
}

TEST_CASE("Cartan generators commute, live in q, and match their flags") {
  for (const SymmetricPairModel& pair :
       {quadric_so32(), quadric_so22(), rank2_so22(), rank3_so33()}) {
    for (const CartanSubspaceData& cartan : ssx::cartan_subspaces(pair)) {
      const auto& gens = cartan.generators;
      REQUIRE(gens.size() == cartan.generator_compact.size());
      for (std::size_t a = 0; a < gens.size(); ++a) {
        const RealMatrix& X = gens[a].matrix;
        CHECK(X.norm() > 0.5);
        CHECK(ssx::in_q(pair, X, 1e-10));
        const RealMatrix theta_X = ssx::theta_apply(pair, X);
        if (cartan.generator_compact[a]) {
          CHECK((theta_X - X).norm() <= 1e-12);
        } else {
          CHECK((theta_X + X).norm() <= 1e-12);
        }
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
          CHECK(bracket(X, gens[b].matrix).norm() <= 1e-12);
        }
      }
      // Root multiplicities tile g minus the centralizer of the Cartan.
      int missing = pair.dim;
      for (const auto& root : cartan.roots) missing -= root.multiplicity;
      CHECK(missing >= static_cast<int>(gens.size()));
    }
  }
}

TEST_CASE("rank one catalog lists one buildable family") {
  const auto& catalog = ssx::rank_one_catalog();
  REQUIRE(catalog.size() == 7);
  int supported = 0;
  for (const auto& row : catalog) {
    if (row.supported_model) {
      ++supported;
      CHECK(row.pair_name == "so(p+1,q+1)/so(p+1,q)");
      CHECK(row.restricted_type == RestrictedType::A1);
    } else {
      CHECK(row.restricted_type == RestrictedType::BC1);
    }
  }
  CHECK(supported == 1);
}

TEST_CASE("model_to_json carries the structural summary") {
  const std::string text = ssx::model_to_json(rank3_so33());
  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("p") == 3);
  CHECK(doc.at("q") == 3);
  CHECK(doc.at("dim_g") == 15);
  CHECK(doc.at("family_tag") == "so(3,3)/so(1,2)+so(2,1)");
  CHECK(doc.at("quadric_model") == false);
  REQUIRE(doc.contains("cartan_subspaces"));
  bool saw_mixed_with_complex_roots = false;
  for (const auto& entry : doc.at("cartan_subspaces")) {
    if (entry.at("kind") == "mixed" && entry.at("roots_complex") > 0) {
      saw_mixed_with_complex_roots = true;
    }
  }
  CHECK(saw_mixed_with_complex_roots);
}

TEST_CASE("sampling respects the requested subspace and radius") {
  const SymmetricPairModel pair = quadric_so32();
  auto rng = ssx::stream_engine(14, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix Q = ssx::sample_q_element(pair, rng, 0.8);
    CHECK(ssx::in_q(pair, Q));
    CHECK(ssx::coordinates(pair, Q).norm() <= 0.8 + 1e-12);
    const RealMatrix H = ssx::sample_h_element(pair, rng, 0.8);
    CHECK(ssx::in_h(pair, H));
    const RealMatrix h = ssx::sample_subgroup_element(pair, rng, 1.0);
    const ssx::ComplexMatrix hc = h.cast<ssx::Complex>();
    CHECK(ssx::group_residual(pair, hc) <= 1e-9);
    CHECK((ssx::tau_apply(pair, hc) - hc).norm() <= 1e-9);
  }
}

TEST_CASE("plane lookup helper agrees with explicit matrix units") {
  const SymmetricPairModel pair = quadric_so32();
  const RealMatrix X = plane(pair, 0, 4);
  CHECK(X(0, 4) == 1.0);
  CHECK(X(4, 0) == 1.0);  // boost: eps_0 eps_4 = -1
  const RealMatrix K = plane(pair, 3, 4);
  CHECK(K(3, 4) == 1.0);
  CHECK(K(4, 3) == -1.0);  // rotation: eps_3 eps_4 = +1
}

}  // TEST_SUITE
