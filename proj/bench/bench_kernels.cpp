// Serial reference vs OpenMP kernels on sampled streams. Each pair of
// benchmarks shares its input so the timings compare like with like.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "cauto/causality.hpp"
#include "cauto/coupled.hpp"
#include "cauto/kernels.hpp"
#include "cauto/machine.hpp"

namespace {

using namespace cauto;

Pfsa two_state_machine() {
  Pfsa p;
  p.alphabet = Alphabet::binary();
  p.graph = LabeledGraph(2, 2, {0, 1, 0, 1});
  p.morph = Matrix::from_rows({{0.85, 0.15}, {0.25, 0.75}});
  return p;
}

const SymbolStream& stream(std::size_t n) {
  static std::vector<std::pair<std::size_t, SymbolStream>> cache;
  for (const auto& [len, s] : cache)
    if (len == n) return s;
  cache.emplace_back(n, sample_stream(two_state_machine(), n, 1));
  return cache.back().second;
}

template <auto Kernel>
void BM_Successors(benchmark::State& state) {
  const auto& s = stream(static_cast<std::size_t>(state.range(0)));
  const auto depth = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s.symbols(), s.symbols(), 2, 2, depth));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_Pattern(benchmark::State& state) {
  const auto& s = stream(static_cast<std::size_t>(state.range(0)));
  const Word pattern{1, 0, 0, 1, 0};
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s.symbols(), s.symbols(), pattern, 2));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_Histogram(benchmark::State& state) {
  const auto& s = stream(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(s.symbols(), 2));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Network(benchmark::State& state) {
  std::vector<NamedStream> streams;
  for (int i = 0; i < 6; ++i) {
    const auto [a, b] = simulate_coupled(CoupledSystemSpec::unidirectional_example(), 20'000,
                                         static_cast<std::uint64_t>(i + 1));
    streams.push_back({"s" + std::to_string(i), i % 2 ? b : a});
  }
  NetworkOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(causality_network(streams, {}, opts));
}

constexpr auto kSerialSucc = &kernels::successor_counts_serial;
constexpr auto kParallelSucc = &kernels::successor_counts_parallel;
constexpr auto kSerialPat = &kernels::pattern_counts_serial;
constexpr auto kParallelPat = &kernels::pattern_counts_parallel;
constexpr auto kSerialHist = &kernels::histogram_serial;
constexpr auto kParallelHist = &kernels::histogram_parallel;

}  // namespace

BENCHMARK(BM_Successors<kSerialSucc>)->Name("successors/serial")->Args({1 << 20, 5})->Args({1 << 22, 8});
BENCHMARK(BM_Successors<kParallelSucc>)->Name("successors/parallel")->Args({1 << 20, 5})->Args({1 << 22, 8})->UseRealTime();
BENCHMARK(BM_Pattern<kSerialPat>)->Name("pattern/serial")->Arg(1 << 22);
BENCHMARK(BM_Pattern<kParallelPat>)->Name("pattern/parallel")->Arg(1 << 22)->UseRealTime();
BENCHMARK(BM_Histogram<kSerialHist>)->Name("histogram/serial")->Arg(1 << 22);
BENCHMARK(BM_Histogram<kParallelHist>)->Name("histogram/parallel")->Arg(1 << 22)->UseRealTime();
BENCHMARK(BM_Network)->Name("network/serial")->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Network)->Name("network/parallel")->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
