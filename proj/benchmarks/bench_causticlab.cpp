#include <benchmark/benchmark.h>

#include <filesystem>

#include "causticlab/caustic.hpp"
#include "causticlab/cli/spec_file.hpp"
#include "causticlab/isocheck.hpp"
#include "causticlab/monodromy.hpp"
#include "causticlab/series.hpp"

using namespace causticlab;

namespace {

const SpecFile& h3() {
  static const SpecFile spec = load_spec(std::filesystem::path(CAUSTICLAB_FIXTURE_DIR) / "h3.json");
  return spec;
}

CausticFrame h3_frame() {
  const FrobeniusManifold M(h3().manifold);
  const CausticCurve& c = h3().curve("y-eq-z3");
  return caustic_frame(M, c.point(1.0), c.tangents(1.0, M.spec().unit_index));
}

void BM_CausticFrame(benchmark::State& state) {
  const FrobeniusManifold M(h3().manifold);
  const CausticCurve& c = h3().curve("y-eq-z3");
  for (auto _ : state) benchmark::DoNotOptimize(caustic_frame(M, c.point(1.0), c.tangents(1.0, 0)));
}
BENCHMARK(BM_CausticFrame);

void BM_FormalReduction(benchmark::State& state) {
  const CausticFrame f = h3_frame();
  const auto K = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(formal_reduction(f.U, f.V, K));
}
BENCHMARK(BM_FormalReduction)->Arg(4)->Arg(10)->Arg(20);

void BM_MonodromyData(benchmark::State& state) {
  const CausticFrame f = h3_frame();
  MonodromyOptions o;
  o.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_monodromy_data(f.U, f.V, o));
}
BENCHMARK(BM_MonodromyData)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Isocheck(benchmark::State& state) {
  const FrobeniusManifold M(h3().manifold);
  for (auto _ : state) benchmark::DoNotOptimize(isocheck(M, h3().curve("y-eq-z3")));
}
BENCHMARK(BM_Isocheck)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
