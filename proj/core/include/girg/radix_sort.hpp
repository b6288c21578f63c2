#pragma once

#include <girg/parallel.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace girg {

/// Stable LSD radix sort of (key, value) pairs on the low `key_bits` bits of
/// the keys. Work is split into one contiguous chunk per worker, so the output
/// does not depend on the worker count.
template <typename Value>
void radix_sort_pairs(std::vector<std::uint64_t>& keys, std::vector<Value>& values, unsigned key_bits,
                      unsigned threads = 0) {
    constexpr unsigned kDigitBits = 8;
    constexpr std::size_t kRadix = 1u << kDigitBits;

    const std::size_t count = keys.size();
    if (count < 2 || key_bits == 0)
        return;

    const unsigned workers = static_cast<unsigned>(
        std::clamp<std::size_t>(count / 4096, 1, resolve_threads(threads)));
    std::vector<std::uint64_t> keys_out(count);
    std::vector<Value> values_out(count);
    std::vector<std::array<std::size_t, kRadix>> histograms(workers);

    auto chunk_begin = [&](unsigned w) { return count * w / workers; };

    for (unsigned shift = 0; shift < key_bits; shift += kDigitBits) {
#pragma omp parallel num_threads(static_cast<int>(workers))
        {
            const auto w = static_cast<unsigned>(omp_get_thread_num());
            auto& hist = histograms[w];
            hist.fill(0);
            for (std::size_t i = chunk_begin(w); i < chunk_begin(w + 1); ++i)
                ++hist[(keys[i] >> shift) & (kRadix - 1)];

#pragma omp barrier
#pragma omp single
            {
                std::size_t offset = 0;
                for (std::size_t digit = 0; digit < kRadix; ++digit)
                    for (unsigned t = 0; t < workers; ++t) {
                        const std::size_t n = histograms[t][digit];
                        histograms[t][digit] = offset;
                        offset += n;
                    }
            }

            for (std::size_t i = chunk_begin(w); i < chunk_begin(w + 1); ++i) {
                const std::size_t dst = hist[(keys[i] >> shift) & (kRadix - 1)]++;
                keys_out[dst] = keys[i];
                values_out[dst] = values[i];
            }
        }
        keys.swap(keys_out);
        values.swap(values_out);
    }
}

} // namespace girg
