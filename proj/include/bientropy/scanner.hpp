#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <vector>

#include "bientropy/bitstring.hpp"
#include "bientropy/entropy.hpp"
#include "bientropy/errors.hpp"
#include "bientropy/stats.hpp"

namespace bientropy {

struct WindowScore {
    std::size_t offset_bytes = 0;
    double tbien = 0.0;
};

struct ScanReport {
    std::size_t window_bits = 0;
    std::vector<WindowScore> windows;  // consecutive, non-overlapping, file order
    SampleStats stats;
    std::size_t truncated_tail_bits = 0;  // tail shorter than one window
};

namespace detail {

/// Packs `len` bytes into a BitString, MSB-first within each byte.
inline BitString bits_from_bytes(std::span<const std::uint8_t> bytes) {
    BitString s(bytes.size() * 8);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const std::uint8_t b = bytes[i];
        for (int j = 0; j < 8; ++j)
            if (b & (0x80u >> j)) s.set_bit(i * 8 + j, true);
    }
    return s;
}

}  // namespace detail

/// Windowed TBiEn over a byte buffer: consecutive non-overlapping windows of
/// window_bits from offset 0, MSB-first bit order within each byte.
inline ScanReport scan_bytes(std::span<const std::uint8_t> data, std::size_t window_bits = 1024,
                             std::optional<std::size_t> max_windows = std::nullopt) {
    if (window_bits < 16 || window_bits % 8 != 0)
        throw std::invalid_argument("scan: window_bits must be >= 16 and a multiple of 8");
    const std::size_t window_bytes = window_bits / 8;
    if (data.size() < window_bytes)
        throw DataError("scan: input smaller than one window (" + std::to_string(data.size()) +
                        " bytes, window " + std::to_string(window_bytes) + ")");
    std::size_t available = data.size() / window_bytes;
    if (max_windows && *max_windows < available) available = *max_windows;

    ScanReport rep;
    rep.window_bits = window_bits;
    rep.truncated_tail_bits = (data.size() - available * window_bytes) * 8;
    if (max_windows && *max_windows < data.size() / window_bytes)
        rep.truncated_tail_bits = 0;  // tail beyond the requested windows is not "truncated"
    rep.windows.reserve(available);

    RunningStats acc;
    for (std::size_t w = 0; w < available; ++w) {
        const std::size_t off = w * window_bytes;
        const BitString bits = detail::bits_from_bytes(data.subspan(off, window_bytes));
        const double v = tbien(bits);
        rep.windows.push_back({off, v});
        acc.add(v);
    }
    rep.stats = acc.stats();
    return rep;
}

/// Reads a file and scans it. Throws DataError on unreadable input or a file
/// smaller than one window.
inline ScanReport scan_file(const std::filesystem::path& path, std::size_t window_bits = 1024,
                            std::optional<std::size_t> max_windows = std::nullopt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) throw DataError("error reading file: " + path.string());
    return scan_bytes(data, window_bits, max_windows);
}

}  // namespace bientropy
