// Synthetic images and datasets shared by the unit and acceptance suites.
#ifndef GAQUANT_TESTS_SYNTHETIC_HPP
#define GAQUANT_TESTS_SYNTHETIC_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gaquant/dataset.hpp"
#include "gaquant/dataset_io.hpp"
#include "gaquant/descriptors.hpp"

namespace gaquant::testing {

inline RasterImage random_image(std::size_t w, std::size_t h, std::mt19937_64& rng) {
    std::vector<std::uint8_t> px(3 * w * h);
    for (auto& p : px) p = static_cast<std::uint8_t>(rng() & 0xff);
    return RasterImage(w, h, std::move(px));
}

/// Image with large uniform patches, so BIC sees both interior and border pixels.
inline RasterImage blocky_image(std::size_t w, std::size_t h, std::size_t block, std::mt19937_64& rng) {
    RasterImage img(w, h, Rgb{});
    for (std::size_t by = 0; by < h; by += block)
        for (std::size_t bx = 0; bx < w; bx += block) {
            const Rgb c{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
            for (std::size_t y = by; y < std::min(h, by + block); ++y)
                for (std::size_t x = bx; x < std::min(w, bx + block); ++x) img.set(x, y, c);
        }
    return img;
}

/// Inclusive per-channel value ranges.
struct ColorBox {
    std::uint8_t lo[3];
    std::uint8_t hi[3];
};

inline Rgb sample(const ColorBox& box, std::mt19937_64& rng) {
    auto ch = [&](int a) {
        const unsigned span = static_cast<unsigned>(box.hi[a]) - box.lo[a] + 1;
        return static_cast<std::uint8_t>(box.lo[a] + rng() % span);
    };
    return {ch(0), ch(1), ch(2)};
}

/// Every image of class c mixes pixels from its primary box with a
/// `noise_fraction` share drawn uniformly from the whole cube.
inline LabeledDataset box_dataset(const std::vector<ColorBox>& classes, std::size_t per_class, std::size_t side,
                                  double noise_fraction, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LabeledImage> items;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        names.push_back("class" + std::to_string(c));
        for (std::size_t i = 0; i < per_class; ++i) {
            RasterImage img(side, side, Rgb{});
            for (std::size_t y = 0; y < side; ++y)
                for (std::size_t x = 0; x < side; ++x) {
                    const bool noise = static_cast<double>(rng() % 1000) < noise_fraction * 1000.0;
                    img.set(x, y, noise ? Rgb{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                                              static_cast<std::uint8_t>(rng())}
                                        : sample(classes[c], rng));
                }
            items.push_back({names.back() + "/img" + std::to_string(i) + ".ppm", std::move(img), c});
        }
    }
    return LabeledDataset(std::move(items), std::move(names));
}

/// Two classes whose colors share every 64-wide channel interval but split
/// at 32: class 0 lives in [0,31]^3-ish shades, class 1 in [32,63].
/// A 4-per-axis quantization maps both to the same bin; 8-per-axis separates them.
inline LabeledDataset colliding_dataset(std::size_t per_class, std::size_t side, std::uint64_t seed) {
    const std::vector<ColorBox> boxes{
        {{0, 128, 192}, {31, 159, 223}},
        {{32, 128, 192}, {63, 159, 223}},
    };
    return box_dataset(boxes, per_class, side, 0.0, seed);
}

inline void write_dataset_dir(const std::filesystem::path& root, const LabeledDataset& ds) {
    std::filesystem::create_directories(root);
    for (const auto& item : ds.items()) {
        const auto path = root / item.id;
        std::filesystem::create_directories(path.parent_path());
        write_file(path, encode_ppm(item.image));
    }
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("gaquant_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace gaquant::testing

#endif // GAQUANT_TESTS_SYNTHETIC_HPP
