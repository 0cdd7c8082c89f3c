#ifndef GAQUANT_QUANTIZER_HPP
#define GAQUANT_QUANTIZER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace gaquant {

/// Reference intervals per RGB axis of the widest quantization (8 tonalities).
inline constexpr std::size_t kDefaultIntervals = 8;

enum class Axis : std::size_t { r = 0, g = 1, b = 2 };

/**
 * Binary encoding of a color quantization.
 *
 * The genome holds 3*N bits, one per reference interval: positions [0,N) are
 * the R axis, [N,2N) the G axis and [2N,3N) the B axis. A set bit opens a new
 * bin on its axis; a clear bit merges its interval into the bin of the
 * previous interval. The first bit of every axis is always set, so every
 * channel value lands in some bin.
 *
 * Instances are only produced through repair_genome() (or the helpers built on
 * it), which is what enforces the leading-bit invariant.
 */
class QuantizationGenome {
public:
    std::size_t intervals() const noexcept { return intervals_; }
    std::size_t size() const noexcept { return bits_.size(); }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    bool bit(std::size_t pos) const { return bits_.at(pos) != 0; }

    std::span<const std::uint8_t> segment(Axis axis) const noexcept {
        return std::span<const std::uint8_t>(bits_).subspan(
            static_cast<std::size_t>(axis) * intervals_, intervals_);
    }

    /// Number of bins on one axis (set bits in its segment).
    std::size_t axis_size(Axis axis) const noexcept {
        std::size_t n = 0;
        for (auto b : segment(axis)) n += b;
        return n;
    }

    std::size_t color_count() const noexcept {
        return axis_size(Axis::r) * axis_size(Axis::g) * axis_size(Axis::b);
    }

    /// '0'/'1' rendering, axis segments concatenated R,G,B.
    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    friend bool operator==(const QuantizationGenome&, const QuantizationGenome&) = default;

private:
    QuantizationGenome(std::vector<std::uint8_t> bits, std::size_t intervals)
        : bits_(std::move(bits)), intervals_(intervals) {}

    friend QuantizationGenome repair_genome(std::span<const std::uint8_t>, std::size_t);

    std::vector<std::uint8_t> bits_;
    std::size_t intervals_ = 0;
};

inline void check_intervals(std::size_t intervals) {
    if (intervals < 1 || intervals > 256)
        throw Error(ErrorCode::invalid_argument,
                    "reference intervals per axis must be in [1,256], got " + std::to_string(intervals));
}

/// Forces the leading bit of each axis segment; everything else is kept.
/// Any non-zero input byte counts as a set bit.
inline QuantizationGenome repair_genome(std::span<const std::uint8_t> raw,
                                        std::size_t intervals = kDefaultIntervals) {
    check_intervals(intervals);
    if (raw.size() != 3 * intervals)
        throw Error(ErrorCode::invalid_genome,
                    "genome length " + std::to_string(raw.size()) + " != 3*" + std::to_string(intervals));
    std::vector<std::uint8_t> bits(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) bits[i] = raw[i] ? 1 : 0;
    for (std::size_t a = 0; a < 3; ++a) bits[a * intervals] = 1;
    return QuantizationGenome(std::move(bits), intervals);
}

inline QuantizationGenome repair_genome(const std::vector<std::uint8_t>& raw,
                                        std::size_t intervals = kDefaultIntervals) {
    return repair_genome(std::span<const std::uint8_t>(raw), intervals);
}

/// Parses the genome text format. Unlike repair_genome(), a clear leading
/// bit is rejected: a stored genome is expected to be valid already.
inline QuantizationGenome parse_genome(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty() || text.size() % 3 != 0)
        throw Error(ErrorCode::invalid_genome,
                    "genome text length " + std::to_string(text.size()) + " is not a positive multiple of 3");
    std::vector<std::uint8_t> bits(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1')
            throw Error(ErrorCode::invalid_genome,
                        "unexpected character at position " + std::to_string(i));
        bits[i] = text[i] == '1';
    }
    const std::size_t n = text.size() / 3;
    for (std::size_t a = 0; a < 3; ++a)
        if (!bits[a * n])
            throw Error(ErrorCode::invalid_genome,
                        "leading bit of axis " + std::to_string(a) + " is clear");
    return repair_genome(bits, n);
}

/// Per-axis lookup tables from channel value to 0-based bin index.
class ColorMap {
public:
    using Table = std::array<std::uint16_t, 256>;

    ColorMap(std::array<Table, 3> tables, std::array<std::size_t, 3> sizes)
        : tables_(tables), sizes_(sizes) {}

    const Table& table(Axis axis) const noexcept { return tables_[static_cast<std::size_t>(axis)]; }
    std::size_t axis_size(Axis axis) const noexcept { return sizes_[static_cast<std::size_t>(axis)]; }
    std::size_t color_count() const noexcept { return sizes_[0] * sizes_[1] * sizes_[2]; }

    /// Flat bin index, R-major then G then B.
    std::size_t quantize(std::uint8_t r, std::uint8_t g, std::uint8_t b) const noexcept {
        return (static_cast<std::size_t>(tables_[0][r]) * sizes_[1] + tables_[1][g]) * sizes_[2] + tables_[2][b];
    }

private:
    std::array<Table, 3> tables_;
    std::array<std::size_t, 3> sizes_;
};

inline ColorMap decode_genome(const QuantizationGenome& genome) {
    const std::size_t n = genome.intervals();
    std::array<ColorMap::Table, 3> tables{};
    std::array<std::size_t, 3> sizes{};
    for (std::size_t a = 0; a < 3; ++a) {
        auto seg = genome.segment(static_cast<Axis>(a));
        // prefix[j] = set bits among reference intervals 0..j, minus one
        std::vector<std::uint16_t> prefix(n);
        std::size_t running = 0;
        for (std::size_t j = 0; j < n; ++j) {
            running += seg[j];
            prefix[j] = static_cast<std::uint16_t>(running - 1);
        }
        for (std::size_t v = 0; v < 256; ++v) tables[a][v] = prefix[v * n / 256];
        sizes[a] = running;
    }
    return ColorMap(tables, sizes);
}

inline std::size_t quantize_pixel(const ColorMap& map, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return map.quantize(r, g, b);
}

/// Feature vector length the genome yields under a descriptor.
inline std::size_t genome_dimension(const QuantizationGenome& genome, Descriptor descriptor) {
    const std::size_t colors = genome.color_count();
    return descriptor == Descriptor::bic ? 2 * colors : colors;
}

/// Uniform quantization with `bins_per_axis` bins on each axis.
inline QuantizationGenome baseline_genome(std::size_t bins_per_axis,
                                          std::size_t intervals = kDefaultIntervals) {
    check_intervals(intervals);
    if (bins_per_axis == 0 || intervals % bins_per_axis != 0)
        throw Error(ErrorCode::invalid_argument,
                    std::to_string(bins_per_axis) + " bins per axis does not divide " +
                        std::to_string(intervals) + " reference intervals");
    const std::size_t step = intervals / bins_per_axis;
    std::vector<std::uint8_t> bits(3 * intervals, 0);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t j = 0; j < intervals; j += step) bits[a * intervals + j] = 1;
    return repair_genome(bits, intervals);
}

} // namespace gaquant

#endif // GAQUANT_QUANTIZER_HPP
