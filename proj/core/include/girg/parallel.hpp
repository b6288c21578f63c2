#pragma once

#include <omp.h>

#include <cstddef>
#include <vector>

namespace girg {

/// 0 means "use all available workers".
inline unsigned resolve_threads(unsigned threads) {
    return threads ? threads : static_cast<unsigned>(omp_get_max_threads());
}

/// Sum of term(0) + ... + term(n - 1) over a fixed chunking, so the rounding
/// does not depend on the worker count.
template <class Term>
double deterministic_sum(std::size_t n, Term term, unsigned threads = 0) {
    constexpr std::size_t kChunks = 256;
    std::vector<double> partial(kChunks, 0.0);
#pragma omp parallel for schedule(static) num_threads(static_cast<int>(resolve_threads(threads)))
    for (int chunk = 0; chunk < static_cast<int>(kChunks); ++chunk) {
        double sum = 0.0;
        const std::size_t end = n * static_cast<std::size_t>(chunk + 1) / kChunks;
        for (std::size_t v = n * static_cast<std::size_t>(chunk) / kChunks; v < end; ++v)
            sum += term(v);
        partial[static_cast<std::size_t>(chunk)] = sum;
    }
    double total = 0.0;
    for (const double x : partial)
        total += x;
    return total;
}

} // namespace girg
