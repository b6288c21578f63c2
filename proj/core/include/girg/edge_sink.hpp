#pragma once

#include <girg/random.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace girg {

/// Undirected edge, always stored with u < v.
struct Edge {
    std::uint64_t u = 0;
    std::uint64_t v = 0;

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Fixed 64-bit hash of one edge; the graph checksum is the sum of these modulo 2^64.
constexpr std::uint64_t edge_hash(std::uint64_t u, std::uint64_t v) noexcept {
    return hash_combine(mix64(u + kGoldenGamma), v);
}

constexpr std::uint64_t edge_hash(const Edge& e) noexcept { return edge_hash(e.u, e.v); }

inline std::uint64_t edge_checksum(std::span<const Edge> edges) noexcept {
    std::uint64_t sum = 0;
    for (const Edge& e : edges)
        sum += edge_hash(e);
    return sum;
}

/// Receives sampled edges in batches. Generators serialize calls, so
/// implementations need no locking of their own.
class EdgeSink {
public:
    virtual ~EdgeSink() = default;
    virtual void consume(std::span<const Edge> edges) = 0;
};

/// Counts edges and accumulates the order-independent checksum.
class EdgeCounter final : public EdgeSink {
public:
    void consume(std::span<const Edge> edges) override {
        count_ += edges.size();
        checksum_ += edge_checksum(edges);
    }

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t checksum() const noexcept { return checksum_; }

private:
    std::uint64_t count_ = 0;
    std::uint64_t checksum_ = 0;
};

/// Keeps every edge in memory.
class EdgeCollector final : public EdgeSink {
public:
    void consume(std::span<const Edge> edges) override { edges_.insert(edges_.end(), edges.begin(), edges.end()); }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<Edge> take() noexcept { return std::move(edges_); }
    void clear() noexcept { edges_.clear(); }

private:
    std::vector<Edge> edges_;
};

} // namespace girg
