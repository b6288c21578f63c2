#include <girg/morton.hpp>

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

std::vector<std::uint64_t> random_coords(unsigned dimension, unsigned level) {
    std::mt19937_64 rng(1);
    std::vector<std::uint64_t> coords(4096 * dimension);
    for (auto& x : coords)
        x = rng() >> (64 - level);
    return coords;
}

template <auto Encode>
void encode(benchmark::State& state) {
    const auto d = static_cast<unsigned>(state.range(0));
    const unsigned level = 62 / d;
    const auto coords = random_coords(d, level);
    for (auto _ : state) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < coords.size(); i += d)
            acc ^= Encode(coords.data() + i, d, level);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(coords.size() / d));
}

template <auto Decode>
void decode(benchmark::State& state) {
    const auto d = static_cast<unsigned>(state.range(0));
    const unsigned level = 62 / d;
    std::mt19937_64 rng(2);
    std::vector<std::uint64_t> codes(4096);
    for (auto& c : codes)
        c = rng() >> (64 - d * level);
    std::uint64_t out[5];
    for (auto _ : state) {
        for (const std::uint64_t c : codes) {
            Decode(c, d, level, out);
            benchmark::DoNotOptimize(out);
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(codes.size()));
}

} // namespace

BENCHMARK(encode<girg::morton::portable_encode>)->Name("morton_encode/portable")->DenseRange(1, 5);
BENCHMARK(decode<girg::morton::portable_decode>)->Name("morton_decode/portable")->DenseRange(1, 5);
#ifdef GIRG_HAVE_BMI2
BENCHMARK(encode<girg::morton::bmi2_encode>)->Name("morton_encode/bmi2")->DenseRange(1, 5);
BENCHMARK(decode<girg::morton::bmi2_decode>)->Name("morton_decode/bmi2")->DenseRange(1, 5);
#endif
