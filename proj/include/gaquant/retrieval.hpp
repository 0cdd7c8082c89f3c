#ifndef GAQUANT_RETRIEVAL_HPP
#define GAQUANT_RETRIEVAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"
#include "descriptors.hpp"

namespace gaquant {

template <typename T>
T l1_distance(std::span<const T> a, std::span<const T> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::incompatible_features,
                    "dimension " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    T sum{};
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    return sum;
}

inline double l1_distance(const FeatureVector& a, const FeatureVector& b) {
    if (a.descriptor != b.descriptor)
        throw Error(ErrorCode::incompatible_features, "descriptor mismatch");
    return l1_distance<double>(a.values, b.values);
}

struct RankedItem {
    std::size_t index = 0;
    double distance = 0.0;
    friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

/// Items other than the query, nearest first. Equal distances are ordered by
/// ascending item index so rankings are reproducible.
struct Ranking {
    std::size_t query_index = 0;
    std::vector<RankedItem> items;

    std::size_t size() const noexcept { return items.size(); }
    friend bool operator==(const Ranking&, const Ranking&) = default;
};

/// Symmetric all-pairs L1 distance matrix, row-major n*n.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::span<const FeatureVector> features)
        : n_(features.size()), d_(n_ * n_, 0.0) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) d_[i * n_ + j] = d_[j * n_ + i] = l1_distance(features[i], features[j]);
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> d_;
};

inline Ranking rank_from_matrix(const DistanceMatrix& dist, std::size_t query) {
    Ranking r{query, {}};
    r.items.reserve(dist.size() - 1);
    for (std::size_t j = 0; j < dist.size(); ++j)
        if (j != query) r.items.push_back({j, dist(query, j)});
    std::sort(r.items.begin(), r.items.end(), [](const RankedItem& a, const RankedItem& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
    });
    return r;
}

inline void require_rankable(std::size_t n, std::size_t query) {
    if (n < 2) throw Error(ErrorCode::invalid_input, "ranking needs at least 2 feature vectors");
    if (query >= n) throw Error(ErrorCode::invalid_argument, "query index out of range");
}

inline Ranking rank_all(std::span<const FeatureVector> features, std::size_t query) {
    require_rankable(features.size(), query);
    Ranking r{query, {}};
    r.items.reserve(features.size() - 1);
    for (std::size_t j = 0; j < features.size(); ++j)
        if (j != query) r.items.push_back({j, l1_distance(features[query], features[j])});
    std::sort(r.items.begin(), r.items.end(), [](const RankedItem& a, const RankedItem& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
    });
    return r;
}

inline std::vector<Ranking> rank_every_query(std::span<const FeatureVector> features) {
    require_rankable(features.size(), 0);
    const DistanceMatrix dist(features);
    std::vector<Ranking> out;
    out.reserve(features.size());
    for (std::size_t q = 0; q < features.size(); ++q) out.push_back(rank_from_matrix(dist, q));
    return out;
}

using Labels = std::span<const std::size_t>;

inline bool is_relevant(const Ranking& r, Labels labels, std::size_t pos) {
    return labels[r.items[pos].index] == labels[r.query_index];
}

inline double precision_at_k(const Ranking& ranking, Labels labels, std::size_t k) {
    if (k == 0 || k > ranking.size())
        throw Error(ErrorCode::invalid_argument,
                    "k=" + std::to_string(k) + " outside [1," + std::to_string(ranking.size()) + "]");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) hits += is_relevant(ranking, labels, i);
    return static_cast<double>(hits) / static_cast<double>(k);
}

/// Mean of the precision values at each relevant item's rank; 0 when the
/// candidate pool holds no relevant item.
inline double average_precision(const Ranking& ranking, Labels labels) {
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (is_relevant(ranking, labels, i)) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return hits ? sum / static_cast<double>(hits) : 0.0;
}

inline std::size_t relevant_count(const Ranking& ranking, Labels labels) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < ranking.size(); ++i) n += is_relevant(ranking, labels, i);
    return n;
}

struct MapResult {
    double value = 0.0;
    /// Queries whose candidate pool had no relevant item (scored AP = 0).
    std::vector<std::size_t> flagged_queries;
};

inline MapResult mean_average_precision(std::span<const Ranking> rankings, Labels labels) {
    MapResult out;
    if (rankings.empty()) return out;
    double sum = 0.0;
    for (const auto& r : rankings) {
        if (relevant_count(r, labels) == 0) out.flagged_queries.push_back(r.query_index);
        sum += average_precision(r, labels);
    }
    out.value = sum / static_cast<double>(rankings.size());
    return out;
}

struct PrPoint {
    double recall = 0.0;
    double precision = 0.0;
};

struct PrCurve {
    std::array<PrPoint, 11> points{};
    std::vector<std::size_t> flagged_queries;
};

/// 11-point interpolated precision for a single query. All zeros when the
/// query has no relevant candidate.
inline std::array<double, 11> interpolated_precision(const Ranking& ranking, Labels labels) {
    std::array<double, 11> out{};
    const std::size_t total = relevant_count(ranking, labels);
    if (total == 0) return out;
    // (hits so far, precision) at each relevant rank; precision only peaks there
    std::vector<std::pair<std::size_t, double>> pr;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (is_relevant(ranking, labels, i)) {
            ++hits;
            pr.emplace_back(hits, static_cast<double>(hits) / static_cast<double>(i + 1));
        }
    }
    for (std::size_t level = 0; level <= 10; ++level) {
        double best = 0.0;
        // recall >= level/10, compared in integers
        for (const auto& [h, precision] : pr)
            if (h * 10 >= level * total) best = std::max(best, precision);
        out[level] = best;
    }
    return out;
}

inline PrCurve pr_curve(std::span<const Ranking> rankings, Labels labels) {
    PrCurve curve;
    for (std::size_t level = 0; level <= 10; ++level) curve.points[level].recall = static_cast<double>(level) / 10.0;
    if (rankings.empty()) return curve;
    std::array<double, 11> sum{};
    for (const auto& r : rankings) {
        if (relevant_count(r, labels) == 0) curve.flagged_queries.push_back(r.query_index);
        const auto p = interpolated_precision(r, labels);
        for (std::size_t l = 0; l < 11; ++l) sum[l] += p[l];
    }
    for (std::size_t l = 0; l < 11; ++l) curve.points[l].precision = sum[l] / static_cast<double>(rankings.size());
    return curve;
}

struct Ffp4Config {
    double k8 = 7.0;
    double k9 = 0.982;

    void validate() const {
        if (!(k8 > 0.0)) throw Error(ErrorCode::invalid_argument, "FFP4 k8 must be positive");
        if (!(k9 > 0.0 && k9 < 1.0)) throw Error(ErrorCode::invalid_argument, "FFP4 k9 must lie in (0,1)");
    }
};

/// Rank-decayed retrieval utility: sum over ranks i>=1 of r_i * k8 * k9^i,
/// over the whole candidate pool.
inline double ffp4_score(const Ranking& ranking, Labels labels, const Ffp4Config& cfg = {}) {
    double score = 0.0;
    double decay = 1.0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        decay *= cfg.k9;
        if (is_relevant(ranking, labels, i)) score += cfg.k8 * decay;
    }
    return score;
}

inline double mean_ffp4(std::span<const FeatureVector> features, Labels labels, const Ffp4Config& cfg = {}) {
    if (labels.size() != features.size())
        throw Error(ErrorCode::invalid_argument, "label count does not match feature count");
    const auto rankings = rank_every_query(features);
    double sum = 0.0;
    for (const auto& r : rankings) sum += ffp4_score(r, labels, cfg);
    return sum / static_cast<double>(rankings.size());
}

} // namespace gaquant

#endif // GAQUANT_RETRIEVAL_HPP
