#include <benchmark/benchmark.h>

#include <vector>

#include "mcpqe/ansatz.hpp"
#include "mcpqe/config.hpp"
#include "mcpqe/engine.hpp"
#include "mcpqe/grouping.hpp"
#include "mcpqe/rng.hpp"
#include "mcpqe/stats.hpp"
#include "mcpqe/statevector.hpp"
#include "mcpqe/system.hpp"

namespace {

using namespace mcpqe;

/// Neutral hydrogen chain built from the in-core integral generator, so the
/// benchmarks need no data files.
const MolecularSystem& chain(int n_atoms) {
  static std::vector<MolecularSystem> cache(16);
  MolecularSystem& sys = cache.at(n_atoms);
  if (sys.n_qubits == 0) {
    ExperimentConfig cfg;
    cfg.system = "hchain";
    cfg.n_atoms = n_atoms;
    cfg.spacing_bohr = 1.8;
    sys = cfg.build();
  }
  return sys;
}

AnsatzState seeded_ansatz(const MolecularSystem& sys) {
  AnsatzState ansatz = enumerate_uccsd(sys.ints, sys.reference);
  RngStream rng(17);
  for (Excitation& e : ansatz.excitations) e.theta = 0.1 * rng.normal();
  return ansatz;
}

void BM_StatePreparation(benchmark::State& state) {
  const MolecularSystem& sys = chain(static_cast<int>(state.range(0)));
  const AnsatzState ansatz = seeded_ansatz(sys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(prepare_state(ansatz));
  }
  state.SetLabel(std::to_string(sys.n_qubits) + " qubits, " +
                 std::to_string(ansatz.excitations.size()) + " params");
}
BENCHMARK(BM_StatePreparation)->Arg(2)->Arg(4)->Arg(6);

void BM_PauliApply(benchmark::State& state) {
  const MolecularSystem& sys = chain(static_cast<int>(state.range(0)));
  const Statevector sv = prepare_state(seeded_ansatz(sys));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sv.apply_operator(sys.h_corr));
  }
}
BENCHMARK(BM_PauliApply)->Arg(2)->Arg(4)->Arg(6);

void BM_SquareShifted(benchmark::State& state) {
  const MolecularSystem& sys = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(square_shifted(sys.h_corr, -0.05));
  }
}
BENCHMARK(BM_SquareShifted)->Arg(4)->Arg(6);

void BM_Grouping(benchmark::State& state) {
  const MolecularSystem& sys = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(group_qubitwise(sys.h_corr));
  }
}
BENCHMARK(BM_Grouping)->Arg(4)->Arg(6);

void BM_ResidualsExact(benchmark::State& state) {
  const MolecularSystem& sys = chain(static_cast<int>(state.range(0)));
  const AnsatzState ansatz = seeded_ansatz(sys);
  RngStream rng(23);
  const std::vector<GroupDraw> draws = sample_groups(sys.groups, 0, rng);
  const NoiseModel noise;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_residuals(ansatz, sys.groups, draws, -0.05, noise, 1234));
  }
}
BENCHMARK(BM_ResidualsExact)->Arg(2)->Arg(4)->Arg(6);

void BM_ResidualsGaussianSampled(benchmark::State& state) {
  const MolecularSystem& sys = chain(static_cast<int>(state.range(0)));
  const AnsatzState ansatz = seeded_ansatz(sys);
  RngStream rng(23);
  const std::vector<GroupDraw> draws = sample_groups(sys.groups, 10, rng);
  NoiseModel noise;
  noise.mode = NoiseMode::kGaussian;
  noise.sigma = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_residuals(ansatz, sys.groups, draws, -0.05, noise, 1234));
  }
}
BENCHMARK(BM_ResidualsGaussianSampled)->Arg(2)->Arg(4);

void BM_GroundStep(benchmark::State& state) {
  const MolecularSystem& sys = chain(4);
  PropagationConfig cfg;
  cfg.n_steps = static_cast<int>(state.range(0));
  cfg.seed = 31;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ground(sys, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_steps);
}
BENCHMARK(BM_GroundStep)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Reblock(benchmark::State& state) {
  RngStream rng(5);
  std::vector<double> series(1 << 16);
  double x = 0.0;
  for (double& v : series) {
    x = 0.9 * x + rng.normal();
    v = x;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(reblock(series, 0.25));
  }
}
BENCHMARK(BM_Reblock);

}  // namespace

BENCHMARK_MAIN();
