#pragma once

#include <girg/edge_sink.hpp>
#include <girg/grid.hpp>
#include <girg/parallel.hpp>
#include <girg/random.hpp>
#include <girg/spatial_index.hpp>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace girg {

/// Number of failed Bernoulli(p) trials before the first success, given a
/// uniform u in [0,1). Throws std::invalid_argument unless 0 < p <= 1.
std::uint64_t geometric_jump(double p, double u);

/// geometric_jump with log(1 - p) hoisted out of the loop.
class GeometricSkipper {
public:
    explicit GeometricSkipper(double p) noexcept : certain_(p >= 1.0), log_q_(certain_ ? 0.0 : std::log1p(-p)) {}

    std::uint64_t operator()(double u) const noexcept {
        if (certain_)
            return 0;
        const double skip = std::floor(std::log1p(-u) / log_q_);
        constexpr double kLimit = 0x1.0p62;
        return skip < kLimit ? static_cast<std::uint64_t>(skip) : std::uint64_t{1} << 62;
    }

private:
    bool certain_;
    double log_q_;
};

/// Collects edges of one worker and hands them to the shared sink in batches.
class EdgeEmitter {
public:
    static constexpr std::size_t kBatch = 4096;

    EdgeEmitter(EdgeSink& sink, std::mutex& mutex) : sink_(sink), mutex_(mutex) { buffer_.reserve(kBatch); }
    EdgeEmitter(const EdgeEmitter&) = delete;
    EdgeEmitter& operator=(const EdgeEmitter&) = delete;

    void emit(std::uint64_t a, std::uint64_t b) {
        buffer_.push_back(a < b ? Edge{a, b} : Edge{b, a});
        if (buffer_.size() == kBatch)
            flush();
    }

    void flush() {
        if (buffer_.empty())
            return;
        {
            std::lock_guard lock(mutex_);
            sink_.consume(buffer_);
        }
        count_ += buffer_.size();
        buffer_.clear();
    }

    std::uint64_t count() const noexcept { return count_ + buffer_.size(); }

private:
    EdgeSink& sink_;
    std::mutex& mutex_;
    std::vector<Edge> buffer_;
    std::uint64_t count_ = 0;
};

/// Cell pair at the level where the parallel engine cuts the recursion tree.
struct CellPairTask {
    enum class Kind { heavy, light, constant };

    unsigned level = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    Kind kind = Kind::heavy;
};

/// Key of the random stream owned by one (cell pair, ordered bucket pair) event.
constexpr std::uint64_t event_key(std::uint64_t seed, unsigned level, std::uint64_t a, std::uint64_t b, unsigned i,
                                  unsigned j) noexcept {
    std::uint64_t key = hash_combine(seed, level);
    key = hash_combine(key, a);
    key = hash_combine(key, b);
    return hash_combine(key, (static_cast<std::uint64_t>(i) << 32) | j);
}

/// Recursive enumeration of cell pairs over a SpatialIndex. The Model decides
/// individual vertex pairs, addressed by index slots:
///
///   bool neighbor_edge(size_t s, size_t t, CounterRng& rng) const;
///   bool samples_distant_pairs() const;
///   double distant_bound(unsigned i, unsigned j, double min_cell_distance) const;
///   bool accept_distant(size_t s, size_t t, double bound, double u) const;
///
/// neighbor_edge runs one trial for a pair in neighboring cells. distant_bound
/// returns an upper bound on the connection probability of bucket pair (i, j)
/// across two cells that far apart; accept_distant keeps a candidate iff
/// u * bound is below its true probability.
template <class Model>
class CellPairEngine {
public:
    CellPairEngine(const Model& model, const SpatialIndex& index, const LevelSchedule& schedule, std::uint64_t seed)
        : model_(model), index_(index), schedule_(schedule), seed_(seed), dimension_(index.dimension()) {}

    /// Emits every sampled edge once; the edge set depends on the seed only.
    std::uint64_t run(EdgeSink& sink, unsigned threads = 0) const {
        const unsigned workers = resolve_threads(threads);
        std::mutex mutex;
        if (workers == 1 || schedule_.max_depth() == 0) {
            EdgeEmitter out(sink, mutex);
            process(0, 0, 0, out);
            out.flush();
            return out.count();
        }

        unsigned cut = 1;
        while (cut < schedule_.max_depth() && (std::uint64_t{1} << (dimension_ * cut)) < 2ULL * workers)
            ++cut;

        std::vector<CellPairTask> heavy;
        std::vector<CellPairTask> other;
        EdgeEmitter shallow(sink, mutex);
        collect(0, 0, 0, cut, heavy, other, shallow);
        shallow.flush();

        std::atomic<std::size_t> next{0};
        std::atomic<std::uint64_t> total{shallow.count()};
        std::exception_ptr failure;
        std::mutex failure_mutex;
#pragma omp parallel num_threads(static_cast<int>(workers))
        {
            try {
                EdgeEmitter out(sink, mutex);
                const auto tid = static_cast<std::size_t>(omp_get_thread_num());
                const auto team = static_cast<std::size_t>(omp_get_num_threads());
                for (std::size_t k = tid; k < heavy.size(); k += team)
                    process(heavy[k].level, heavy[k].a, heavy[k].b, out);
                constexpr std::size_t kChunk = 16;
                for (std::size_t begin = next.fetch_add(kChunk); begin < other.size();
                     begin = next.fetch_add(kChunk))
                    for (std::size_t k = begin; k < std::min(begin + kChunk, other.size()); ++k)
                        process(other[k].level, other[k].a, other[k].b, out);
                out.flush();
                total += out.count();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(other.size());
            }
        }
        if (failure)
            std::rethrow_exception(failure);
        return total.load();
    }

    /// Handles the cell pair (a, b), a <= b, and its descendants.
    void process(unsigned level, std::uint64_t a, std::uint64_t b, EdgeEmitter& out) const {
        if (grid::neighbors_unchecked(a, b, level, dimension_)) {
            process_neighbor(level, a, b, out);
            if (level < schedule_.max_depth())
                for_each_child_pair(a, b, [&](std::uint64_t ca, std::uint64_t cb) { process(level + 1, ca, cb, out); });
        } else if (model_.samples_distant_pairs()) {
            process_distant(level, a, b, out);
        }
    }

    void process_neighbor(unsigned level, std::uint64_t a, std::uint64_t b, EdgeEmitter& out) const {
        for (const BucketPair& pair : schedule_.neighbor_pairs(level)) {
            const SlotRange ai = index_.vertices_in_unchecked(pair.i, level, a);
            if (a == b) {
                neighbor_block(ai, index_.vertices_in_unchecked(pair.j, level, a), pair.i == pair.j,
                               event_key(seed_, level, a, b, pair.i, pair.j), out);
                continue;
            }
            neighbor_block(ai, index_.vertices_in_unchecked(pair.j, level, b), false,
                           event_key(seed_, level, a, b, pair.i, pair.j), out);
            if (pair.i != pair.j)
                neighbor_block(index_.vertices_in_unchecked(pair.j, level, a),
                               index_.vertices_in_unchecked(pair.i, level, b), false,
                               event_key(seed_, level, a, b, pair.j, pair.i), out);
        }
    }

    void process_distant(unsigned level, std::uint64_t a, std::uint64_t b, EdgeEmitter& out) const {
        const double min_distance = grid::min_distance_unchecked(a, b, level, dimension_);
        for (const BucketPair& pair : schedule_.distant_pairs(level)) {
            distant_block(pair.i, pair.j, index_.vertices_in_unchecked(pair.i, level, a),
                          index_.vertices_in_unchecked(pair.j, level, b), min_distance,
                          event_key(seed_, level, a, b, pair.i, pair.j), out);
            if (pair.i != pair.j)
                distant_block(pair.j, pair.i, index_.vertices_in_unchecked(pair.j, level, a),
                              index_.vertices_in_unchecked(pair.i, level, b), min_distance,
                              event_key(seed_, level, a, b, pair.j, pair.i), out);
        }
    }

private:
    template <class Fn>
    void for_each_child_pair(std::uint64_t a, std::uint64_t b, Fn&& fn) const {
        const std::uint64_t children = children_per_cell(dimension_);
        const std::uint64_t first_a = a << dimension_;
        const std::uint64_t first_b = b << dimension_;
        for (std::uint64_t x = 0; x < children; ++x)
            for (std::uint64_t y = (a == b ? x : 0); y < children; ++y)
                fn(first_a + x, first_b + y);
    }

    void collect(unsigned level, std::uint64_t a, std::uint64_t b, unsigned cut, std::vector<CellPairTask>& heavy,
                 std::vector<CellPairTask>& other, EdgeEmitter& out) const {
        if (level == cut) {
            if (a == b)
                heavy.push_back({level, a, b, CellPairTask::Kind::heavy});
            else if (grid::neighbors_unchecked(a, b, level, dimension_))
                other.push_back({level, a, b, CellPairTask::Kind::light});
            else if (model_.samples_distant_pairs())
                other.push_back({level, a, b, CellPairTask::Kind::constant});
            return;
        }
        if (grid::neighbors_unchecked(a, b, level, dimension_)) {
            process_neighbor(level, a, b, out);
            for_each_child_pair(a, b, [&](std::uint64_t ca, std::uint64_t cb) {
                collect(level + 1, ca, cb, cut, heavy, other, out);
            });
        } else if (model_.samples_distant_pairs()) {
            process_distant(level, a, b, out);
        }
    }

    void neighbor_block(SlotRange first, SlotRange second, bool triangle, std::uint64_t key,
                        EdgeEmitter& out) const {
        if (first.empty() || second.empty())
            return;
        CounterRng rng(key);
        for (std::size_t s = first.begin; s < first.end; ++s)
            for (std::size_t t = triangle ? s + 1 : second.begin; t < second.end; ++t)
                if (model_.neighbor_edge(s, t, rng))
                    out.emit(index_.vertex(s), index_.vertex(t));
    }

    void distant_block(unsigned i, unsigned j, SlotRange first, SlotRange second, double min_distance,
                       std::uint64_t key, EdgeEmitter& out) const {
        if (first.empty() || second.empty())
            return;
        const double bound = model_.distant_bound(i, j, min_distance);
        if (!(bound > 0.0))
            return;
        const GeometricSkipper skip(bound);
        CounterRng rng(key);
        const std::uint64_t columns = second.size();
        const std::uint64_t total = first.size() * columns;
        std::uint64_t position = skip(rng.uniform());
        while (position < total) {
            const std::size_t s = first.begin + position / columns;
            const std::size_t t = second.begin + position % columns;
            if (model_.accept_distant(s, t, bound, rng.uniform()))
                out.emit(index_.vertex(s), index_.vertex(t));
            position += 1 + skip(rng.uniform());
        }
    }

    const Model& model_;
    const SpatialIndex& index_;
    const LevelSchedule& schedule_;
    std::uint64_t seed_;
    unsigned dimension_;
};

} // namespace girg
