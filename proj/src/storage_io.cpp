#include "hermsim/storage_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace hermsim {

namespace {

constexpr std::array<char, 4> magic = {'O', 'H', 'R', 'M'};
constexpr std::uint32_t format_version = 1;
constexpr std::size_t header_bytes = 16;

static_assert(std::endian::native == std::endian::little, "payload writer assumes a little-endian host");

void put_u32(unsigned char* p, std::uint32_t v) {
    p[0] = static_cast<unsigned char>(v);
    p[1] = static_cast<unsigned char>(v >> 8);
    p[2] = static_cast<unsigned char>(v >> 16);
    p[3] = static_cast<unsigned char>(v >> 24);
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

void save(const MatrixHandle& h, std::ostream& out) {
    unsigned char header[header_bytes] = {};
    std::memcpy(header, magic.data(), 4);
    put_u32(header + 4, format_version);
    header[8] = static_cast<unsigned char>(h.format());
    header[9] = static_cast<unsigned char>(h.qubits());
    header[10] = static_cast<unsigned char>(h.tile_exp());
    // header[11..15] reserved, zero

    out.write(reinterpret_cast<const char*>(header), header_bytes);
    out.write(reinterpret_cast<const char*>(h.payload()),
              static_cast<std::streamsize>(h.payload_count() * sizeof(cplx)));
    if (!out)
        throw IoError(IoErrorKind::io_failure, "save: stream write failed");
}

void save(const MatrixHandle& h, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError(IoErrorKind::io_failure, "save: cannot open " + path);
    save(h, f);
}

MatrixHandle load(std::istream& in) {
    unsigned char header[header_bytes];
    in.read(reinterpret_cast<char*>(header), header_bytes);
    if (in.gcount() != header_bytes)
        throw IoError(IoErrorKind::truncated, "load: header truncated");
    if (std::memcmp(header, magic.data(), 4) != 0)
        throw IoError(IoErrorKind::bad_magic, "load: bad magic bytes");
    if (get_u32(header + 4) != format_version)
        throw IoError(IoErrorKind::bad_version, "load: unsupported version");

    const unsigned char tag = header[8];
    const int n = header[9];
    const int m = header[10];
    if (tag > 2)
        throw IoError(IoErrorKind::bad_header, "load: unknown format tag");
    if (n < 1 || n > 30)
        throw IoError(IoErrorKind::bad_header, "load: qubit count out of range");
    const Format format = static_cast<Format>(tag);
    if (format != Format::tiled && m != 0)
        throw IoError(IoErrorKind::bad_header, "load: tile exponent set for non-tiled format");
    if (format == Format::tiled && (m < 0 || m > n + 2))
        throw IoError(IoErrorKind::bad_header, "load: tile exponent out of range");

    auto read_payload = [&](auto& matrix) {
        const std::streamsize want = static_cast<std::streamsize>(matrix.element_count() * sizeof(cplx));
        in.read(reinterpret_cast<char*>(matrix.data()), want);
        if (in.gcount() != want)
            throw IoError(IoErrorKind::truncated, "load: payload truncated");
        // Exactly one operator per stream: trailing bytes are a length error.
        char probe;
        if (in.read(&probe, 1); in.gcount() != 0)
            throw IoError(IoErrorKind::length_mismatch, "load: trailing bytes after payload");
    };

    switch (format) {
        case Format::dense: {
            DenseHermitian d(n);
            read_payload(d);
            return MatrixHandle(std::move(d));
        }
        case Format::packed: {
            PackedHermitian p(n);
            read_payload(p);
            return MatrixHandle(std::move(p));
        }
        case Format::tiled: {
            TiledHermitian t(n, m);
            read_payload(t);
            return MatrixHandle(std::move(t));
        }
    }
    throw std::logic_error("unreachable");
}

MatrixHandle load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError(IoErrorKind::io_failure, "load: cannot open " + path);
    return load(f);
}

} // namespace hermsim
