#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qdeco/decoherence.hpp"
#include "qdeco/field_decoherence.hpp"
#include "qdeco/hilbert.hpp"
#include "qdeco/lattice_qed.hpp"

using namespace qdeco;

namespace {

hilbert::StateVector random_state(std::size_t qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  hilbert::TensorLayout layout(std::vector<std::size_t>(qubits, 2));
  hilbert::Vector v(static_cast<Eigen::Index>(layout.flat_dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = hilbert::Complex(gauss(rng), gauss(rng));
  v.normalize();
  return hilbert::StateVector(layout, v);
}

void BM_PartialTraceState(benchmark::State& state) {
  const auto qubits = static_cast<std::size_t>(state.range(0));
  const auto psi = random_state(qubits, 1);
  const std::vector<std::size_t> keep{0, qubits / 2};
  for (auto _ : state) benchmark::DoNotOptimize(hilbert::partial_trace(psi, keep));
}
BENCHMARK(BM_PartialTraceState)->Arg(8)->Arg(12)->Arg(16);

void BM_PartialTraceDensity(benchmark::State& state) {
  const auto qubits = static_cast<std::size_t>(state.range(0));
  const auto rho = hilbert::outer_product(random_state(qubits, 2));
  const std::vector<std::size_t> keep{0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(hilbert::partial_trace(rho, keep));
}
BENCHMARK(BM_PartialTraceDensity)->Arg(6)->Arg(8);

void BM_Eigendecomposition(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  hilbert::Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = hilbert::Complex(gauss(rng), gauss(rng));
  const hilbert::Matrix h = 0.5 * (a + a.adjoint());
  for (auto _ : state) benchmark::DoNotOptimize(hilbert::hermitian_eigendecomposition(h));
}
BENCHMARK(BM_Eigendecomposition)->Arg(16)->Arg(64)->Arg(256);

void BM_SpinBathEvolve(benchmark::State& state) {
  std::vector<double> couplings;
  for (int k = 0; k < state.range(0); ++k) couplings.push_back(0.3 + 0.17 * k);
  const auto model = decoherence::SpinBathModel::equal_weights(couplings);
  const auto times = decoherence::time_grid(10.0, 99);
  for (auto _ : state) benchmark::DoNotOptimize(decoherence::spin_bath_evolve(model, times));
}
BENCHMARK(BM_SpinBathEvolve)->Arg(4)->Arg(10);

void BM_LocalInvariantBasis(benchmark::State& state) {
  const lattice::LatticeSpec spec(2, static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice::gauge_invariant_local_basis(spec, lattice::maximal_interior(spec)));
  }
}
BENCHMARK(BM_LocalInvariantBasis)->Arg(1);

void BM_IdentityResidual(benchmark::State& state) {
  const lattice::LatticeSpec spec(3, 2, 0);
  const lattice::GaugeFunction xi{{0.3, -1.2, 2.1}, 0.7, -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(lattice::identity_residual(spec, xi));
}
BENCHMARK(BM_IdentityResidual);

void BM_CoherenceLength(benchmark::State& state) {
  const auto field = units::volts_per_centimetre(1e7);
  for (auto _ : state) benchmark::DoNotOptimize(field::coherence_length(field));
}
BENCHMARK(BM_CoherenceLength);

}  // namespace

BENCHMARK_MAIN();
