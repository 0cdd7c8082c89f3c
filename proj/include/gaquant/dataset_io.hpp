#ifndef GAQUANT_DATASET_IO_HPP
#define GAQUANT_DATASET_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "dataset.hpp"
#include "descriptors.hpp"

namespace gaquant {

namespace detail {

// Header tokenizer for netpbm: whitespace separated, '#' starts a comment
// running to end of line.
class PnmHeaderReader {
public:
    explicit PnmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

    std::string_view token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) && bytes_[pos_] != '#')
            ++pos_;
        return bytes_.substr(start, pos_ - start);
    }

    std::size_t number(const char* field) {
        const auto tok = token();
        if (tok.empty() || tok.size() > 9 ||
            !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw Error(ErrorCode::decode_error, std::string("malformed header: bad ") + field);
        return std::stoul(std::string(tok));
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            throw Error(ErrorCode::decode_error, "malformed header: missing separator before pixel data");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Decodes a binary (P6) PPM with maxval 255.
inline RasterImage decode_ppm(std::string_view bytes) {
    detail::PnmHeaderReader reader(bytes);
    const auto magic = reader.token();
    if (magic.size() != 2 || magic[0] != 'P')
        throw Error(ErrorCode::decode_error, "malformed header: not a netpbm file");
    if (magic != "P6")
        throw Error(ErrorCode::decode_error, "unsupported variant " + std::string(magic) + " (only binary P6 is read)");
    const std::size_t width = reader.number("width");
    const std::size_t height = reader.number("height");
    const std::size_t maxval = reader.number("maxval");
    if (width == 0 || height == 0) throw Error(ErrorCode::decode_error, "malformed header: zero image dimension");
    if (maxval != 255)
        throw Error(ErrorCode::decode_error, "unsupported maxval " + std::to_string(maxval) + " (only 255 is read)");
    const std::size_t offset = reader.raster_offset();
    const std::size_t need = 3 * width * height;
    if (bytes.size() - offset < need)
        throw Error(ErrorCode::decode_error, "truncated pixel data: " + std::to_string(bytes.size() - offset) +
                                                 " of " + std::to_string(need) + " bytes");
    std::vector<std::uint8_t> rgb(need);
    std::copy_n(reinterpret_cast<const unsigned char*>(bytes.data() + offset), need, rgb.begin());
    return RasterImage(width, height, std::move(rgb));
}

inline std::string encode_ppm(const RasterImage& image) {
    std::string out = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
    out.append(image.data().begin(), image.data().end());
    return out;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

inline RasterImage load_image(const std::filesystem::path& path) { return decode_ppm(read_file(path)); }

struct ManifestEntry {
    std::string class_name;
    std::string relative_path;  // "<class>/<file>", '/' separated
    bool decoded = false;
    std::string reason;         // empty when decoded
};

struct DatasetManifest {
    std::string root;
    std::vector<std::string> classes;  // classes that contributed at least one image
    std::vector<ManifestEntry> entries;

    std::size_t skipped() const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.decoded; }));
    }
};

struct LoadedDataset {
    LabeledDataset dataset;
    DatasetManifest manifest;
};

/**
 * Loads `root/<class>/<image>`. Classes and files are visited in byte-wise
 * lexicographic order of their names; files that fail to decode are recorded
 * in the manifest and left out. Classes with no decodable image are dropped.
 */
inline LoadedDataset load_dataset(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error(ErrorCode::io_error, "dataset root " + root.string() + " is not a directory");

    std::vector<std::string> class_dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) class_dirs.push_back(entry.path().filename().string());
    std::sort(class_dirs.begin(), class_dirs.end());

    DatasetManifest manifest{root.string(), {}, {}};
    std::vector<LabeledImage> items;
    for (const auto& cls : class_dirs) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(root / cls))
            if (entry.is_regular_file()) files.push_back(entry.path().filename().string());
        std::sort(files.begin(), files.end());

        bool any = false;
        for (const auto& file : files) {
            ManifestEntry me{cls, cls + "/" + file, false, {}};
            try {
                items.push_back({me.relative_path, load_image(root / cls / file), manifest.classes.size()});
                me.decoded = true;
                any = true;
            } catch (const Error& e) {
                me.reason = e.what();
            }
            manifest.entries.push_back(std::move(me));
        }
        if (any) manifest.classes.push_back(cls);
    }
    if (manifest.classes.empty()) throw Error(ErrorCode::empty_dataset, "no decodable images under " + root.string());
    if (items.size() < 2)
        throw Error(ErrorCode::empty_dataset, "only " + std::to_string(items.size()) + " decodable image under " + root.string());
    return {LabeledDataset(std::move(items), manifest.classes), std::move(manifest)};
}

} // namespace gaquant

#endif // GAQUANT_DATASET_IO_HPP
