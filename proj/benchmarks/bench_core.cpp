#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/bell.hpp"
#include "qca/detail/quadrature.hpp"
#include "qca/ghz.hpp"
#include "qca/hilbert.hpp"
#include "qca/info_classes.hpp"
#include "qca/random.hpp"

namespace {

qca::UpdateRule random_permutation_rule(std::size_t n, std::uint64_t seed) {
  std::vector<qca::State> map(n);
  std::iota(map.begin(), map.end(), qca::State{0});
  qca::Rng rng(seed);
  qca::portable_shuffle(rng, map);
  return qca::UpdateRule(qca::StateSpace(n), std::move(map));
}

qca::UpdateRule random_function_rule(std::size_t n, std::uint64_t seed) {
  std::vector<qca::State> map(n);
  qca::Rng rng(seed);
  for (auto& successor : map) {
    successor = static_cast<qca::State>(qca::uniform_index(rng, n));
  }
  return qca::UpdateRule(qca::StateSpace(n), std::move(map));
}

void BM_CycleDecomposition(benchmark::State& state) {
  const auto rule = random_permutation_rule(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::cycle_decomposition(rule));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CycleDecomposition)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

void BM_InfoClasses(benchmark::State& state) {
  const auto rule = random_function_rule(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::compute_info_classes(rule));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_InfoClasses)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_EntropyProfile(benchmark::State& state) {
  const auto rule = random_function_rule(static_cast<std::size_t>(state.range(0)), 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::entropy_profile(rule, 64));
  }
}
BENCHMARK(BM_EntropyProfile)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_EvolveState(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const auto unitary = qca::lift_to_unitary(random_permutation_rule(dim, 23));
  qca::Rng rng(29);
  std::vector<qca::Complex> raw(dim);
  for (auto& amplitude : raw) {
    amplitude = qca::Complex(qca::uniform_unit(rng) - 0.5, qca::uniform_unit(rng) - 0.5);
  }
  const auto psi = qca::QuantumState::normalized(std::move(raw));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::evolve_state(unitary, psi, 1000003));
  }
}
BENCHMARK(BM_EvolveState)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_ExtractHamiltonian(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const auto unitary = qca::lift_to_unitary(random_permutation_rule(dim, 31));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::extract_hamiltonian(unitary));
  }
}
BENCHMARK(BM_ExtractHamiltonian)->RangeMultiplier(2)->Range(1 << 7, 1 << 10);

void BM_CubeQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::detail::w_cube_integral(1e-8, 64, 16));
  }
}
BENCHMARK(BM_CubeQuadrature);

void BM_MarginalFlatness(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qca::marginal_flatness(qca::MarginalVariable::Lambda,
                               static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_MarginalFlatness)->Arg(32)->Arg(64)->Arg(128);

void BM_HiddenVariableCorrelation(benchmark::State& state) {
  const qca::HiddenVariableDensity density;
  const auto rule = qca::default_outcome_rule();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qca::hidden_variable_correlation(density, rule, 0.3, 0.9));
  }
}
BENCHMARK(BM_HiddenVariableCorrelation);

void BM_SimulateRuns(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qca::simulate_runs(static_cast<std::uint64_t>(state.range(0)), 42));
  }
}
BENCHMARK(BM_SimulateRuns)->RangeMultiplier(10)->Range(1000, 100000);

}  // namespace

BENCHMARK_MAIN();
