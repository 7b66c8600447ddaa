// Serial versus OpenMP timings for the sweep kernels. Each benchmark takes
// the execution policy as its argument: 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "dtk/dynamics.hpp"
#include "dtk/integrals.hpp"
#include "dtk/parser.hpp"

namespace {

using namespace dtk;

Execution policy(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

const DVariety& rotation() {
  static const Ring r({"x", "y"});
  static const DVariety x = DVariety::affine(r, {parse_poly("-y", r), parse_poly("x", r)});
  return x;
}

const OrbitSample& rotation_orbit() {
  static const OrbitSample s = integrate_orbit(rotation(), {Rat(1), Rat(0)}, 1e-3, 20000);
  return s;
}

void BM_EvaluationMatrix(benchmark::State& st) {
  const auto& pts = rotation_orbit().points;
  for (auto _ : st) benchmark::DoNotOptimize(evaluation_matrix(pts, 6, policy(st)));
}
BENCHMARK(BM_EvaluationMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Density(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(zariski_density_up_to_degree(rotation_orbit(), 4, 1e-8, policy(st)));
}
BENCHMARK(BM_Density)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_InvarianceDrift(benchmark::State& st) {
  const Ring& r = rotation().ring();
  const Ideal z(r, {parse_poly("x^2 + y^2 - 1", r), parse_poly("x^4 - y^4 + x*y", r)});
  for (auto _ : st) benchmark::DoNotOptimize(invariance_drift(rotation_orbit(), z, policy(st)));
}
BENCHMARK(BM_InvarianceDrift)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IntegrateOrbits(benchmark::State& st) {
  std::vector<std::vector<Rat>> starts;
  for (int k = 1; k <= 16; ++k) starts.push_back({Rat(k, 16), Rat(-k, 32)});
  for (auto _ : st) benchmark::DoNotOptimize(integrate_orbits(rotation(), starts, 1e-3, 5000, policy(st)));
}
BENCHMARK(BM_IntegrateOrbits)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DarbouxSearch(benchmark::State& st) {
  const Ring r({"x"});
  const DVariety sq = product(DVariety::affine(r, {parse_poly("x^2", r)}), 2);
  SearchOptions opts;
  opts.execution = policy(st);
  for (auto _ : st) benchmark::DoNotOptimize(darboux_search(sq, 3, opts));
}
BENCHMARK(BM_DarbouxSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PropertyO(benchmark::State& st) {
  const Ring r({"x"});
  const DVariety scaling = DVariety::affine(r, {parse_poly("x", r)});
  SearchOptions opts;
  opts.execution = policy(st);
  for (auto _ : st) benchmark::DoNotOptimize(property_O_bounded(scaling, 3, 4, opts));
}
BENCHMARK(BM_PropertyO)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
