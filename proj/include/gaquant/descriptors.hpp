#ifndef GAQUANT_DESCRIPTORS_HPP
#define GAQUANT_DESCRIPTORS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"
#include "quantizer.hpp"

namespace gaquant {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB raster. A default-constructed image is empty (0x0).
class RasterImage {
public:
    RasterImage() = default;

    RasterImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> rgb)
        : width_(width), height_(height), rgb_(std::move(rgb)) {
        if (width == 0 || height == 0)
            throw Error(ErrorCode::invalid_input, "image dimensions must be positive");
        if (rgb_.size() != 3 * width * height)
            throw Error(ErrorCode::invalid_input,
                        "pixel buffer holds " + std::to_string(rgb_.size()) + " bytes, expected " +
                            std::to_string(3 * width * height));
    }

    RasterImage(std::size_t width, std::size_t height, Rgb fill)
        : RasterImage(width, height, std::vector<std::uint8_t>(3 * width * height)) {
        for (std::size_t i = 0; i < width * height; ++i) set(i % width, i / width, fill);
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }
    bool empty() const noexcept { return pixel_count() == 0; }
    const std::vector<std::uint8_t>& data() const noexcept { return rgb_; }

    Rgb at(std::size_t x, std::size_t y) const noexcept {
        const std::size_t o = 3 * (y * width_ + x);
        return {rgb_[o], rgb_[o + 1], rgb_[o + 2]};
    }

    void set(std::size_t x, std::size_t y, Rgb c) noexcept {
        const std::size_t o = 3 * (y * width_ + x);
        rgb_[o] = c.r;
        rgb_[o + 1] = c.g;
        rgb_[o + 2] = c.b;
    }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> rgb_;
};

/// Descriptor output. GCH values are reals in [0,1]; BIC values are dLog
/// codes 0..9 stored as doubles so both share the distance code.
struct FeatureVector {
    Descriptor descriptor = Descriptor::gch;
    std::vector<double> values;

    std::size_t dimension() const noexcept { return values.size(); }
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

namespace detail {

inline void require_pixels(const RasterImage& image) {
    if (image.empty()) throw Error(ErrorCode::invalid_input, "image has no pixels");
}

inline std::vector<std::size_t> quantize_image(const RasterImage& image, const ColorMap& map) {
    std::vector<std::size_t> out(image.pixel_count());
    const auto& d = image.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = map.quantize(d[3 * i], d[3 * i + 1], d[3 * i + 2]);
    return out;
}

// Upper bounds of the rescaled value s = 255*count/max for codes 1..8;
// code 9 covers (128,255].
inline constexpr std::array<std::uint64_t, 8> kDlogBounds{1, 2, 4, 8, 16, 32, 64, 128};

// dLog code of count/max, decided with integer arithmetic so no rounding
// can move a value across a threshold.
inline int dlog_ratio(std::uint64_t count, std::uint64_t max) {
    if (count == 0) return 0;
    const std::uint64_t scaled = 255 * count;
    int code = 1;
    for (auto bound : kDlogBounds) {
        if (scaled <= bound * max) return code;
        ++code;
    }
    return 9;
}

} // namespace detail

/// Discrete logarithmic compression of a max-normalized histogram value.
inline int dlog_encode(double normalized) {
    if (!(normalized >= 0.0 && normalized <= 1.0))
        throw Error(ErrorCode::invalid_input, "dLog input must lie in [0,1]");
    const double s = normalized * 255.0;
    if (s == 0.0) return 0;
    int code = 1;
    for (auto bound : detail::kDlogBounds) {
        if (s <= static_cast<double>(bound)) return code;
        ++code;
    }
    return 9;
}

inline FeatureVector extract_gch(const RasterImage& image, const ColorMap& map) {
    detail::require_pixels(image);
    std::vector<std::uint64_t> hist(map.color_count(), 0);
    for (auto bin : detail::quantize_image(image, map)) ++hist[bin];
    const double max = static_cast<double>(*std::max_element(hist.begin(), hist.end()));
    FeatureVector fv{Descriptor::gch, std::vector<double>(hist.size())};
    for (std::size_t i = 0; i < hist.size(); ++i) fv.values[i] = static_cast<double>(hist[i]) / max;
    return fv;
}

enum class PixelClass : std::uint8_t { border, interior };

/// A pixel is interior when every in-image 4-neighbour shares its quantized
/// color. Neighbours outside the raster never demote a pixel.
inline std::vector<PixelClass> classify_pixels(const RasterImage& image, const ColorMap& map) {
    detail::require_pixels(image);
    const auto q = detail::quantize_image(image, map);
    const std::size_t w = image.width(), h = image.height();
    std::vector<PixelClass> mask(q.size(), PixelClass::interior);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t i = y * w + x;
            const bool differs = (x > 0 && q[i - 1] != q[i]) || (x + 1 < w && q[i + 1] != q[i]) ||
                                 (y > 0 && q[i - w] != q[i]) || (y + 1 < h && q[i + w] != q[i]);
            if (differs) mask[i] = PixelClass::border;
        }
    }
    return mask;
}

/// Raw border and interior color counts before normalization.
struct BicCounts {
    std::vector<std::uint64_t> border;
    std::vector<std::uint64_t> interior;
};

inline BicCounts bic_counts(const RasterImage& image, const ColorMap& map) {
    detail::require_pixels(image);
    const auto q = detail::quantize_image(image, map);
    const auto mask = classify_pixels(image, map);
    BicCounts counts{std::vector<std::uint64_t>(map.color_count(), 0),
                     std::vector<std::uint64_t>(map.color_count(), 0)};
    for (std::size_t i = 0; i < q.size(); ++i)
        ++(mask[i] == PixelClass::border ? counts.border : counts.interior)[q[i]];
    return counts;
}

/// Border histogram followed by interior histogram, both divided by their
/// joint maximum and dLog-coded.
inline FeatureVector extract_bic(const RasterImage& image, const ColorMap& map) {
    const auto counts = bic_counts(image, map);
    const std::uint64_t max = std::max(*std::max_element(counts.border.begin(), counts.border.end()),
                                       *std::max_element(counts.interior.begin(), counts.interior.end()));
    const std::size_t colors = map.color_count();
    FeatureVector fv{Descriptor::bic, std::vector<double>(2 * colors)};
    for (std::size_t i = 0; i < colors; ++i) {
        fv.values[i] = detail::dlog_ratio(counts.border[i], max);
        fv.values[colors + i] = detail::dlog_ratio(counts.interior[i], max);
    }
    return fv;
}

inline FeatureVector extract(Descriptor descriptor, const RasterImage& image, const ColorMap& map) {
    return descriptor == Descriptor::bic ? extract_bic(image, map) : extract_gch(image, map);
}

} // namespace gaquant

#endif // GAQUANT_DESCRIPTORS_HPP
