#include <benchmark/benchmark.h>

#include <random>

#include "ssx/domains.hpp"
#include "ssx/hyperboloid.hpp"
#include "ssx/matrix_core.hpp"
#include "ssx/rng.hpp"
#include "ssx/root_lattice.hpp"
#include "ssx/symmetric_pair.hpp"

namespace {

ssx::RealMatrix random_real(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  ssx::RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  }
  return m;
}

void BM_MatrixExp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto rng = ssx::stream_engine(7, 0);
  const ssx::ComplexMatrix m =
      random_real(rng, n, 1.0).cast<ssx::Complex>();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssx::matrix_exp(m));
  }
}
BENCHMARK(BM_MatrixExp)->Arg(5)->Arg(10)->Arg(20);

void BM_JordanChevalley(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto rng = ssx::stream_engine(8, 0);
  const ssx::RealMatrix m = random_real(rng, n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssx::jordan_chevalley(m));
  }
}
BENCHMARK(BM_JordanChevalley)->Arg(5)->Arg(10);

void BM_RegularityRoutes(benchmark::State& state) {
  const ssx::SymmetricPairModel pair =
      ssx::build_so_pair(3, 2, {1, 1, 1, 1, -1});
  auto rng = ssx::stream_engine(9, 0);
  const ssx::RealMatrix x = ssx::sample_q_element(pair, rng, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssx::dphi_regular(pair, x));
  }
}
BENCHMARK(BM_RegularityRoutes);

void BM_LatticeMinimality(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ssx::LatticeType type =
      n <= 5 ? ssx::LatticeType::A : ssx::LatticeType::E;
  for (auto _ : state) {
    ssx::GramLattice lattice = ssx::build_coroot_lattice(type, n);
    ssx::set_involution(lattice, ssx::InvolutionKind::Identity);
    benchmark::DoNotOptimize(ssx::verify_generator_minimality(lattice));
  }
}
BENCHMARK(BM_LatticeMinimality)->Arg(3)->Arg(4)->Arg(6);

void BM_InjectivityTrial(benchmark::State& state) {
  const ssx::SymmetricPairModel pair =
      ssx::build_so_pair(2, 2, {1, 1, 1, -1});
  for (auto _ : state) {
    ssx::TrialConfig config;
    config.domain = ssx::TrialDomain::Omega;
    config.n_samples = static_cast<int>(state.range(0));
    config.seed = 21;
    config.constructed_equivalents = 10;
    benchmark::DoNotOptimize(ssx::injectivity_trial(pair, config));
  }
}
BENCHMARK(BM_InjectivityTrial)->Arg(200)->Arg(1000);

void BM_LeviSignature(benchmark::State& state) {
  const ssx::QuadricPoint pt =
      ssx::slice_point(4, 3, ssx::SliceKind::Q, -0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ssx::levi_signature(pt, ssx::LevelFunction::PlusF));
  }
}
BENCHMARK(BM_LeviSignature);

}  // namespace

BENCHMARK_MAIN();
