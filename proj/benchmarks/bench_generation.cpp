#include <girg/generator.hpp>

#include <benchmark/benchmark.h>

namespace {

// Args: log2 n, dimension, temperature in percent.
void girg_edges(benchmark::State& state) {
    girg::GirgParams p;
    p.n = std::uint64_t{1} << state.range(0);
    p.dimension = static_cast<unsigned>(state.range(1));
    p.temperature = static_cast<double>(state.range(2)) / 100.0;
    p.degree_target = 10.0;
    std::uint64_t edges = 0;
    for (auto _ : state) {
        girg::EdgeCounter sink;
        girg::generate_girg(p, sink, 1);
        edges += sink.count();
    }
    state.counters["ns_per_edge"] =
        benchmark::Counter(static_cast<double>(edges), benchmark::Counter::kIsRate | benchmark::Counter::kInvert);
}

// Args: log2 n, temperature in percent.
void hrg_edges(benchmark::State& state) {
    girg::HrgParams p;
    p.n = std::uint64_t{1} << state.range(0);
    p.temperature = static_cast<double>(state.range(1)) / 100.0;
    p.degree_target = 10.0;
    std::uint64_t edges = 0;
    for (auto _ : state) {
        girg::EdgeCounter sink;
        girg::generate_hrg(p, sink, 1);
        edges += sink.count();
    }
    state.counters["ns_per_edge"] =
        benchmark::Counter(static_cast<double>(edges), benchmark::Counter::kIsRate | benchmark::Counter::kInvert);
}

} // namespace

BENCHMARK(girg_edges)
    ->ArgsProduct({{15, 17, 19}, {1, 2}, {0, 50}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(hrg_edges)->ArgsProduct({{15, 17, 19}, {0, 50}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
