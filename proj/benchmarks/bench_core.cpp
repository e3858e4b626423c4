#include <benchmark/benchmark.h>

#include "qmeter/dynamics.hpp"
#include "qmeter/pumping.hpp"

using namespace qmeter;

namespace {

SpinSystem model_system(int extra_nuclei) {
  std::vector<Site> sites = {{"eF", SpinRole::Electron, 2}, {"eT", SpinRole::Electron, 2}};
  for (int i = 0; i < extra_nuclei; ++i) {
    sites.push_back({"n" + std::to_string(i), SpinRole::Nucleus, 2});
  }
  return SpinSystem(sites);
}

HamiltonianSpec model_spec(const SpinSystem& system) {
  HamiltonianSpec spec;
  for (int i = 2; i < system.site_count(); ++i) {
    spec.terms.emplace_back(HyperfineTerm::axial(Vec3(0, 0, 1000.0 / (i - 1)), 0, i));
  }
  ZeemanTerm ze;
  ze.b_uT = Vec3(50, 0, 0);
  spec.terms.emplace_back(ze);
  return spec;
}

void BM_build_hamiltonian(benchmark::State& state) {
  const SpinSystem system = model_system(static_cast<int>(state.range(0)));
  const HamiltonianSpec spec = model_spec(system);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build(spec, system));
  }
  state.SetLabel("dim=" + std::to_string(system.dim()));
}
BENCHMARK(BM_build_hamiltonian)->Arg(1)->Arg(3)->Arg(4);

void BM_propagate(benchmark::State& state) {
  const SpinSystem system = model_system(static_cast<int>(state.range(0)));
  const OperatorMatrix h = build(model_spec(system), system);
  const DensityMatrix rho0 = radical_pair_initial_state(system, {});
  OpenSystemModel model;
  model.tau_c_s = 2e-8;
  model.k_back_per_s = 1e6;
  model.k_prot_per_s = 1e6;
  PropagationOptions opts;
  opts.t_max_s = 1e-7;
  opts.sample_stride = 1 << 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(rho0, h, system, model, opts));
  }
  state.SetLabel("dim=" + std::to_string(system.dim()));
}
BENCHMARK(BM_propagate)->Arg(1)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_compute_yields_collapse(benchmark::State& state) {
  const SpinSystem system = model_system(1);
  const OperatorMatrix h = build(model_spec(system), system);
  const DensityMatrix rho0 = radical_pair_initial_state(system, {});
  OpenSystemModel model;
  model.tau_c_s = 1e-8;
  model.k_back_per_s = 1e6;
  model.k_prot_per_s = 1e6;
  model.decoherence = Decoherence::Collapse;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_yields(rho0, h, system, model, {}));
  }
}
BENCHMARK(BM_compute_yields_collapse)->Unit(benchmark::kMillisecond);

void BM_steady_state(benchmark::State& state) {
  KineticScheme scheme = preset_scheme("fig1a-light-harvesting");
  scheme.pump->n_bar = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state(scheme));
  }
}
BENCHMARK(BM_steady_state);

}  // namespace

BENCHMARK_MAIN();
