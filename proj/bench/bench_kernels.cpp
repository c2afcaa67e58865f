/// \file bench_kernels.cpp
/// \brief Serial reference vs OpenMP kernels: slab assembly and error integration.

#include "stis/error_analysis.hpp"
#include "stis/experiment.hpp"

#include <benchmark/benchmark.h>

using namespace stis;

namespace {

ExecutionPolicy policy_of(const benchmark::State& st) {
  return st.range(1) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
}

void BM_assemble_slab(benchmark::State& st) {
  ExperimentConfig cfg;
  const auto pc = make_experiment_case<2>(cfg);
  const int ns = static_cast<int>(st.range(0));
  auto params = discretization(cfg, ns, 4);
  const std::shared_ptr<const SpatialMesh<2>> mesh = build_structured_mesh<2>(pc.coeff.domain, ns);
  const auto tp = build_time_partition(pc.coeff.final_time, 4);
  const auto s = setup_slab<2>(pc.coeff, params, mesh, tp, 2);
  const Eigen::VectorXd prev = Eigen::VectorXd::Zero(s.vspace->num_nodes() * 2);
  for (auto _ : st) {
    auto sys = assemble_slab_system<2>(*s.vspace, *s.pspace, *s.geometry, pc.coeff, prev, params.orders,
                                       policy_of(st));
    benchmark::DoNotOptimize(sys.rhs.data());
  }
  st.SetLabel(st.range(1) ? "openmp" : "serial");
}

void BM_compute_errors(benchmark::State& st) {
  ExperimentConfig cfg;
  const auto pc = make_experiment_case<2>(cfg);
  const int ns = static_cast<int>(st.range(0));
  const auto sol = march<2>(pc.coeff, discretization(cfg, ns, 2));
  ErrorOptions opt;
  opt.policy = policy_of(st);
  for (auto _ : st) {
    auto e = compute_errors<2>(sol, *pc.exact, pc.coeff.phi, opt);
    benchmark::DoNotOptimize(e.velocity_l2h1);
  }
  st.SetLabel(st.range(1) ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_assemble_slab)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compute_errors)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
