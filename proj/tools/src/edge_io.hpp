#pragma once

#include <girg/edge_sink.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace girg::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EdgeFormat { edgelist, binary };

/// "GIRGEDGE" read as a little-endian 64-bit word.
inline constexpr std::uint64_t kBinaryMagic = 0x4547444547524947ULL;
inline constexpr std::uint64_t kBinaryVersion = 1;
/// Vertex ids are stored as 32-bit words below this vertex count.
inline constexpr std::uint64_t kNarrowIdLimit = std::uint64_t{1} << 31;

/// Key/value lines written as `% key value` ahead of the edges.
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// Writes edges to a file while counting and checksumming them. The file is
/// deleted unless finish() succeeds.
class EdgeFileWriter final : public EdgeSink {
public:
    EdgeFileWriter(std::filesystem::path path, EdgeFormat format, std::uint64_t n, const Provenance& provenance);
    ~EdgeFileWriter() override;
    EdgeFileWriter(const EdgeFileWriter&) = delete;
    EdgeFileWriter& operator=(const EdgeFileWriter&) = delete;

    /// Text format only: `% key value` lines; call before the first edge.
    void write_provenance(const Provenance& provenance);
    void consume(std::span<const Edge> edges) override;
    /// Flushes, patches the binary header and closes the file.
    void finish();

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t checksum() const noexcept { return checksum_; }

private:
    void write_word(std::uint64_t value, unsigned bytes);
    void check(bool ok, const char* what);

    std::filesystem::path path_;
    EdgeFormat format_;
    std::uint64_t n_;
    std::vector<char> buffer_;
    std::FILE* file_ = nullptr;
    bool finished_ = false;
    std::uint64_t count_ = 0;
    std::uint64_t checksum_ = 0;
};

struct EdgeFile {
    std::uint64_t n = 0;  // from the header or the `% n` line, 0 if absent
    Provenance provenance;
    std::vector<Edge> edges;
};

EdgeFile read_edge_file(const std::filesystem::path& path, EdgeFormat format);

/// Removes the file on destruction unless released.
class FileGuard {
public:
    explicit FileGuard(std::filesystem::path path) : path_(std::move(path)) {}
    ~FileGuard() {
        if (!path_.empty()) {
            std::error_code ignored;
            std::filesystem::remove(path_, ignored);
        }
    }
    FileGuard(const FileGuard&) = delete;
    FileGuard& operator=(const FileGuard&) = delete;
    void release() noexcept { path_.clear(); }

private:
    std::filesystem::path path_;
};

} // namespace girg::cli
