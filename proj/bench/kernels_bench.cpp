// Serial reference vs OpenMP kernels at the sizes the library uses:
// 10^4-point spectra and 64k-point condition blocks.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <span>
#include <vector>

#include "entorder/kernels.hpp"

namespace k = entorder::kernels;

namespace {

constexpr k::CurveShape kShape{4, 1.0};
constexpr double kOffset = 3.79;
constexpr double kDelta = 1.3862943611198906;  // -2 ln 0.5

template <auto Kernel>
void condition_flags(benchmark::State& state) {
  const std::vector<k::CurveShape> shapes{{1, 1.0}, {1, 1.5}, {1, 2.0}};
  std::vector<std::uint8_t> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Kernel(std::span<const k::CurveShape>(shapes), 1.01, 0.01, 0.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void log_curve_values(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Kernel(kShape, kOffset, kDelta, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void log_weights_from_tail(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> log_g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) log_g[i] = -kDelta * static_cast<double>(i);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(log_g, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(condition_flags<k::serial::condition_flags>)->Name("condition_flags/serial")->Arg(1 << 16);
BENCHMARK(condition_flags<k::parallel::condition_flags>)->Name("condition_flags/parallel")->Arg(1 << 16);
BENCHMARK(log_curve_values<k::serial::log_curve_values>)->Name("log_curve_values/serial")->Arg(10001);
BENCHMARK(log_curve_values<k::parallel::log_curve_values>)->Name("log_curve_values/parallel")->Arg(10001);
BENCHMARK(log_weights_from_tail<k::serial::log_weights_from_tail>)->Name("log_weights/serial")->Arg(10000);
BENCHMARK(log_weights_from_tail<k::parallel::log_weights_from_tail>)->Name("log_weights/parallel")->Arg(10000);

BENCHMARK_MAIN();
