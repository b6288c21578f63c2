#include "edge_io.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>

namespace girg::cli {

namespace {

std::uint64_t load_le(const unsigned char* bytes, unsigned width) {
    std::uint64_t value = 0;
    for (unsigned k = 0; k < width; ++k)
        value |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
    return value;
}

std::uint64_t parse_id(std::string_view text, const std::filesystem::path& path) {
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw IoError(path.string() + ": malformed vertex id '" + std::string(text) + "'");
    return value;
}

EdgeFile read_edgelist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    EdgeFile file;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '%') {
            std::string_view rest(line);
            rest.remove_prefix(std::min<std::size_t>(2, rest.size()));
            const auto space = rest.find(' ');
            std::string key(rest.substr(0, space));
            std::string value(space == std::string_view::npos ? "" : rest.substr(space + 1));
            if (key == "n")
                file.n = parse_id(value, path);
            file.provenance.emplace_back(std::move(key), std::move(value));
            continue;
        }
        const auto space = line.find(' ');
        if (space == std::string::npos)
            throw IoError(path.string() + ": expected two vertex ids in '" + line + "'");
        const std::string_view view(line);
        file.edges.push_back({parse_id(view.substr(0, space), path), parse_id(view.substr(space + 1), path)});
    }
    return file;
}

EdgeFile read_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::array<unsigned char, 32> header{};
    if (!in.read(reinterpret_cast<char*>(header.data()), header.size()))
        throw IoError(path.string() + ": truncated header");
    if (load_le(header.data(), 8) != kBinaryMagic)
        throw IoError(path.string() + ": not a binary edge file");
    if (load_le(header.data() + 8, 8) != kBinaryVersion)
        throw IoError(path.string() + ": unsupported format version");
    EdgeFile file;
    file.n = load_le(header.data() + 16, 8);
    const std::uint64_t m = load_le(header.data() + 24, 8);
    const unsigned width = file.n < kNarrowIdLimit ? 4 : 8;
    file.edges.resize(m);
    std::vector<unsigned char> block(2 * width);
    for (Edge& e : file.edges) {
        if (!in.read(reinterpret_cast<char*>(block.data()), static_cast<std::streamsize>(block.size())))
            throw IoError(path.string() + ": truncated edge data");
        e = {load_le(block.data(), width), load_le(block.data() + width, width)};
    }
    return file;
}

} // namespace

EdgeFileWriter::EdgeFileWriter(std::filesystem::path path, EdgeFormat format, std::uint64_t n,
                               const Provenance& provenance)
    : path_(std::move(path)), format_(format), n_(n) {
    file_ = std::fopen(path_.string().c_str(), format_ == EdgeFormat::binary ? "wb" : "w");
    if (!file_)
        throw IoError("cannot open " + path_.string() + " for writing: " + std::strerror(errno));
    buffer_.resize(std::size_t{1} << 20);
    std::setvbuf(file_, buffer_.data(), _IOFBF, buffer_.size());
    if (format_ == EdgeFormat::binary) {
        write_word(kBinaryMagic, 8);
        write_word(kBinaryVersion, 8);
        write_word(n_, 8);
        write_word(0, 8);  // m, patched by finish()
    } else {
        write_provenance(provenance);
    }
}

void EdgeFileWriter::write_provenance(const Provenance& provenance) {
    if (format_ != EdgeFormat::edgelist)
        return;
    for (const auto& [key, value] : provenance)
        check(std::fprintf(file_, "%% %s %s\n", key.c_str(), value.c_str()) >= 0, "write");
}

EdgeFileWriter::~EdgeFileWriter() {
    if (file_)
        std::fclose(file_);
    if (!finished_) {
        std::error_code ignored;
        std::filesystem::remove(path_, ignored);
    }
}

void EdgeFileWriter::check(bool ok, const char* what) {
    if (!ok)
        throw IoError(std::string(what) + " failed on " + path_.string() + ": " + std::strerror(errno));
}

void EdgeFileWriter::write_word(std::uint64_t value, unsigned bytes) {
    std::array<unsigned char, 8> out{};
    for (unsigned k = 0; k < bytes; ++k)
        out[k] = static_cast<unsigned char>(value >> (8 * k));
    check(std::fwrite(out.data(), 1, bytes, file_) == bytes, "write");
}

void EdgeFileWriter::consume(std::span<const Edge> edges) {
    if (format_ == EdgeFormat::binary) {
        const unsigned width = n_ < kNarrowIdLimit ? 4 : 8;
        for (const Edge& e : edges) {
            write_word(e.u, width);
            write_word(e.v, width);
        }
    } else {
        std::array<char, 48> line{};
        for (const Edge& e : edges) {
            char* p = std::to_chars(line.data(), line.data() + 20, e.u).ptr;
            *p++ = ' ';
            p = std::to_chars(p, line.data() + 42, e.v).ptr;
            *p++ = '\n';
            const auto length = static_cast<std::size_t>(p - line.data());
            check(std::fwrite(line.data(), 1, length, file_) == length, "write");
        }
    }
    count_ += edges.size();
    checksum_ += edge_checksum(edges);
}

void EdgeFileWriter::finish() {
    if (format_ == EdgeFormat::binary) {
        check(std::fseek(file_, 24, SEEK_SET) == 0, "seek");
        write_word(count_, 8);
    }
    const int flushed = std::fflush(file_);
    const int closed = std::fclose(file_);
    file_ = nullptr;
    check(flushed == 0 && closed == 0, "close");
    finished_ = true;
}

EdgeFile read_edge_file(const std::filesystem::path& path, EdgeFormat format) {
    return format == EdgeFormat::binary ? read_binary(path) : read_edgelist(path);
}

} // namespace girg::cli
