#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "nlds/field.hpp"

namespace nlds {

static_assert(std::endian::native == std::endian::little,
              "field container format is little-endian");

/// FNV-1a over raw bytes; also the cache-key hash primitive.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a_f64(double v, std::uint64_t seed) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    return fnv1a(&bits, sizeof bits, seed);
}

/// Header of the binary field container (version byte guards evolution):
///   "NLDSFLD" + version, u64 M, f64 a, b, eps, time, tau,
///   u64 meta_hash, u64 payload checksum, u64 creation unix time,
/// then 4*M little-endian doubles (re1, im1, re2, im2 per node).
struct FieldHeader {
    double eps = 0.0;
    double time = 0.0;
    double tau = 0.0;
    std::uint64_t meta_hash = 0;
};

namespace detail {

inline constexpr char kFieldMagic[7] = {'N', 'L', 'D', 'S', 'F', 'L', 'D'};
inline constexpr unsigned char kFieldVersion = 1;

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool get(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return bool(is);
}

}  // namespace detail

inline void save_field(const std::filesystem::path& path, const SpinorField& f,
                       const FieldHeader& hdr) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open for writing: " + path.string());
    const std::uint64_t m = static_cast<std::uint64_t>(f.size());
    std::vector<double> payload;
    payload.reserve(4 * m);
    for (int j = 0; j < f.size(); ++j) {
        payload.push_back(f.c1[j].real());
        payload.push_back(f.c1[j].imag());
        payload.push_back(f.c2[j].real());
        payload.push_back(f.c2[j].imag());
    }
    const std::uint64_t checksum = fnv1a(payload.data(), payload.size() * sizeof(double));
    os.write(detail::kFieldMagic, sizeof detail::kFieldMagic);
    os.put(static_cast<char>(detail::kFieldVersion));
    detail::put(os, m);
    detail::put(os, f.grid->a());
    detail::put(os, f.grid->b());
    detail::put(os, hdr.eps);
    detail::put(os, hdr.time);
    detail::put(os, hdr.tau);
    detail::put(os, hdr.meta_hash);
    detail::put(os, checksum);
    detail::put(os, static_cast<std::uint64_t>(std::time(nullptr)));
    os.write(reinterpret_cast<const char*>(payload.data()),
             static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (!os) throw io_error("short write: " + path.string());
}

/// Loads a container onto the given grid. meta_hash, when nonzero, must match
/// the stored value. Any structural mismatch throws io_error.
inline SpinorField load_field(const std::filesystem::path& path, const GridPtr& grid,
                              std::uint64_t meta_hash = 0) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open: " + path.string());
    char magic[7];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, detail::kFieldMagic, sizeof magic) != 0)
        throw io_error("bad magic: " + path.string());
    const int version = is.get();
    if (version != detail::kFieldVersion)
        throw io_error("unsupported container version " + std::to_string(version));
    std::uint64_t m = 0, stored_meta = 0, stored_sum = 0, created = 0;
    double a = 0, b = 0, eps = 0, time = 0, tau = 0;
    if (!detail::get(is, m) || !detail::get(is, a) || !detail::get(is, b) ||
        !detail::get(is, eps) || !detail::get(is, time) || !detail::get(is, tau) ||
        !detail::get(is, stored_meta) || !detail::get(is, stored_sum) || !detail::get(is, created))
        throw io_error("truncated header: " + path.string());
    if (static_cast<int>(m) != grid->size() || a != grid->a() || b != grid->b())
        throw io_error("grid mismatch in container: " + path.string());
    if (meta_hash != 0 && stored_meta != meta_hash)
        throw io_error("metadata hash mismatch: " + path.string());
    std::vector<double> payload(4 * m);
    is.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (!is) throw io_error("truncated payload: " + path.string());
    if (fnv1a(payload.data(), payload.size() * sizeof(double)) != stored_sum)
        throw io_error("payload checksum mismatch: " + path.string());
    SpinorField f(grid);
    for (std::uint64_t j = 0; j < m; ++j) {
        f.c1[j] = cplx(payload[4 * j], payload[4 * j + 1]);
        f.c2[j] = cplx(payload[4 * j + 2], payload[4 * j + 3]);
    }
    return f;
}

}  // namespace nlds
