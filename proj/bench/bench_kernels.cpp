#include <benchmark/benchmark.h>

#include <filesystem>
#include <limits>
#include <map>

#include "boxqi/kernels.hpp"
#include "boxqi/space_file.hpp"
#include "boxqi/test_functions.hpp"

using namespace boxqi;

namespace {

// Uniform tensor space refined `level` times from the 4x4 fixture.
const QuasiInterpolant& space_at(int level) {
  static std::map<int, QuasiInterpolant> cache;
  auto it = cache.find(level);
  if (it == cache.end()) {
    SpaceDescription d = load_space(std::filesystem::path(BOXQI_CONFIG_DIR) / "spaces/tps_4x4.json");
    for (int k = 0; k < level; ++k) d = d.refined();
    it = cache.emplace(level, assign_functionals(d.build())).first;
  }
  return it->second;
}

void apply(benchmark::State& state, Exec exec) {
  const QuasiInterpolant& q = space_at(static_cast<int>(state.range(0)));
  const FunctionOracle f = make_test_function("sin_prod", 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply_quasi_interp(q, f.value, exec));
  state.counters["dofs"] = static_cast<double>(q.size());
}

void error(benchmark::State& state, Exec exec, double p) {
  const QuasiInterpolant& q = space_at(static_cast<int>(state.range(0)));
  const FunctionOracle f = make_test_function("sin_prod", 2);
  const auto c = apply_quasi_interp(q, f.value);
  for (auto _ : state) benchmark::DoNotOptimize(error_norm(f, q, c, p, MultiIndex{0, 0}, exec));
  state.counters["elements"] = static_cast<double>(q.spline_space().mesh.size());
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

BENCHMARK_CAPTURE(apply, serial, Exec::serial)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(apply, parallel, Exec::parallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(error, serial_l2, Exec::serial, 2.0)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(error, parallel_l2, Exec::parallel, 2.0)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(error, serial_max, Exec::serial, kInf)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(error, parallel_max, Exec::parallel, kInf)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
