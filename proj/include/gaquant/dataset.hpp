#ifndef GAQUANT_DATASET_HPP
#define GAQUANT_DATASET_HPP

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"
#include "descriptors.hpp"

namespace gaquant {

struct LabeledImage {
    std::string id;
    RasterImage image;
    std::size_t label = 0;  // index into LabeledDataset::classes()
};

/// Labelled images with at least two items and unique ids. Labels index the
/// class-name list.
class LabeledDataset {
public:
    LabeledDataset(std::vector<LabeledImage> items, std::vector<std::string> classes)
        : items_(std::move(items)), classes_(std::move(classes)) {
        if (items_.size() < 2)
            throw Error(ErrorCode::invalid_input, "dataset needs at least 2 items, got " + std::to_string(items_.size()));
        std::set<std::string> ids;
        for (const auto& item : items_) {
            if (item.label >= classes_.size())
                throw Error(ErrorCode::invalid_input, "item '" + item.id + "' has an unknown class label");
            if (!ids.insert(item.id).second)
                throw Error(ErrorCode::invalid_input, "duplicate image id '" + item.id + "'");
            if (item.image.empty())
                throw Error(ErrorCode::invalid_input, "item '" + item.id + "' has no pixels");
        }
        labels_.reserve(items_.size());
        for (const auto& item : items_) labels_.push_back(item.label);
    }

    std::size_t size() const noexcept { return items_.size(); }
    const LabeledImage& operator[](std::size_t i) const { return items_.at(i); }
    const std::vector<LabeledImage>& items() const noexcept { return items_; }
    const std::vector<std::string>& classes() const noexcept { return classes_; }
    std::span<const std::size_t> labels() const noexcept { return labels_; }

    /// Items at the given indices, in the given order. The class list is kept
    /// so labels stay comparable with the parent dataset.
    LabeledDataset subset(std::span<const std::size_t> indices) const {
        std::vector<LabeledImage> picked;
        picked.reserve(indices.size());
        for (auto i : indices) picked.push_back(items_.at(i));
        return LabeledDataset(std::move(picked), classes_);
    }

private:
    std::vector<LabeledImage> items_;
    std::vector<std::string> classes_;
    std::vector<std::size_t> labels_;
};

} // namespace gaquant

#endif // GAQUANT_DATASET_HPP
