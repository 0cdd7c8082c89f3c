#ifndef GAQUANT_EXPERIMENT_HPP
#define GAQUANT_EXPERIMENT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "dataset.hpp"
#include "descriptors.hpp"
#include "ga.hpp"
#include "quantizer.hpp"
#include "retrieval.hpp"
#include "stats.hpp"

namespace gaquant {

/// Assignment of every dataset item to one of k folds.
struct FoldPlan {
    std::size_t k = 5;
    std::uint64_t seed = 0;
    std::vector<std::size_t> fold_of;

    /// Dataset indices in fold f, ascending.
    std::vector<std::size_t> test_indices(std::size_t f) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] == f) out.push_back(i);
        return out;
    }

    /// Dataset indices outside fold f, ascending.
    std::vector<std::size_t> train_indices(std::size_t f) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < fold_of.size(); ++i)
            if (fold_of[i] != f) out.push_back(i);
        return out;
    }

    std::size_t fold_size(std::size_t f) const {
        return static_cast<std::size_t>(std::count(fold_of.begin(), fold_of.end(), f));
    }
};

/// Seeded Fisher-Yates shuffle followed by round-robin assignment, so fold
/// sizes differ by at most one.
inline FoldPlan kfold_split(std::size_t item_count, std::size_t k, std::uint64_t seed) {
    if (k < 1) throw Error(ErrorCode::invalid_argument, "fold count must be at least 1");
    if (k > item_count)
        throw Error(ErrorCode::invalid_argument,
                    std::to_string(k) + " folds requested for " + std::to_string(item_count) + " items");
    std::vector<std::size_t> order(item_count);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t i = item_count; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    FoldPlan plan{k, seed, std::vector<std::size_t>(item_count)};
    for (std::size_t pos = 0; pos < item_count; ++pos) plan.fold_of[order[pos]] = pos % k;
    return plan;
}

inline FoldPlan kfold_split(const LabeledDataset& dataset, std::size_t k, std::uint64_t seed) {
    return kfold_split(dataset.size(), k, seed);
}

struct MethodSpec {
    std::string tag;
    bool learned = false;
    std::optional<std::size_t> limit;
};

inline MethodSpec baseline_method() { return {"baseline", false, std::nullopt}; }
inline MethodSpec nla_method() { return {"NLA", true, std::nullopt}; }
inline MethodSpec la_method(std::size_t limit) { return {"LA-" + std::to_string(limit), true, limit}; }

/// Limit sweeps used for the limited approach by default.
inline std::vector<std::size_t> default_limits(Descriptor d) {
    if (d == Descriptor::bic) return {16, 32, 64, 96, 128, 256, 384};
    return {8, 16, 32, 48, 64, 128, 192};
}

struct ExperimentConfig {
    GaConfig ga;
    bool run_nla = true;
    std::vector<std::size_t> limits;
    std::size_t baseline_bins = 4;
    /// Rank cutoff for precision; clipped to the ranking length of small folds.
    std::size_t precision_k = 10;
    double alpha = 0.05;

    std::vector<MethodSpec> methods() const {
        std::vector<MethodSpec> out{baseline_method()};
        if (run_nla) out.push_back(nla_method());
        for (auto l : limits) out.push_back(la_method(l));
        return out;
    }
};

struct QueryMetrics {
    std::string image_id;
    std::string class_name;
    double precision = 0.0;
    double average_precision = 0.0;
    double ffp4 = 0.0;
};

struct FoldMetrics {
    std::size_t fold = 0;
    std::size_t dimension = 0;
    std::size_t precision_k = 0;
    double precision = 0.0;
    double map = 0.0;
    double mean_ffp4 = 0.0;
    std::vector<QueryMetrics> queries;
    PrCurve pr;
    std::vector<std::string> flagged_queries;
    std::optional<QuantizationGenome> genome;
    std::optional<EvolutionRecord> evolution;
};

struct Summary {
    double mean = 0.0;
    double sd = 0.0;
};

inline Summary summarize(std::span<const double> values) { return {stats::mean(values), stats::sample_sd(values)}; }

struct MethodReport {
    MethodSpec method;
    std::vector<FoldMetrics> folds;
    Summary precision, map, ffp4, dimension;

    std::vector<double> column(double FoldMetrics::*field) const {
        std::vector<double> out;
        for (const auto& f : folds) out.push_back(f.*field);
        return out;
    }
};

struct Comparison {
    std::string method;
    std::string baseline;
    stats::TTestResult precision;
    stats::TTestResult map;
};

struct MetricsReport {
    Descriptor descriptor = Descriptor::bic;
    std::size_t k = 0;
    std::vector<MethodReport> methods;
    std::vector<Comparison> comparisons;
};

/// Retrieval metrics for one set of features ranked among themselves.
inline FoldMetrics score_features(std::span<const FeatureVector> features, std::span<const std::size_t> labels,
                                  std::span<const std::string> ids, std::span<const std::string> class_names,
                                  std::size_t precision_k, const Ffp4Config& ffp4) {
    const auto rankings = rank_every_query(features);
    FoldMetrics m;
    m.dimension = features.front().dimension();
    m.precision_k = std::min(precision_k, features.size() - 1);
    double p_sum = 0.0, f_sum = 0.0;
    for (const auto& r : rankings) {
        QueryMetrics q{ids[r.query_index], class_names[labels[r.query_index]], precision_at_k(r, labels, m.precision_k),
                       average_precision(r, labels), ffp4_score(r, labels, ffp4)};
        p_sum += q.precision;
        f_sum += q.ffp4;
        m.queries.push_back(std::move(q));
    }
    const double n = static_cast<double>(rankings.size());
    m.precision = p_sum / n;
    m.mean_ffp4 = f_sum / n;
    const auto map = mean_average_precision(rankings, labels);
    m.map = map.value;
    m.pr = pr_curve(rankings, labels);
    for (auto q : map.flagged_queries) m.flagged_queries.push_back(ids[q]);
    return m;
}

/// Extracts features for `dataset` under `genome` and scores them.
inline FoldMetrics evaluate_genome(const QuantizationGenome& genome, const LabeledDataset& dataset,
                                   Descriptor descriptor, std::size_t precision_k, const Ffp4Config& ffp4) {
    const ColorMap map = decode_genome(genome);
    std::vector<FeatureVector> features;
    std::vector<std::string> ids;
    for (const auto& item : dataset.items()) {
        features.push_back(extract(descriptor, item.image, map));
        ids.push_back(item.id);
    }
    auto m = score_features(features, dataset.labels(), ids, dataset.classes(), precision_k, ffp4);
    m.genome = genome;
    return m;
}

/// GA seed for a (fold, method) pair, derived from the master seed.
inline std::uint64_t fold_seed(std::uint64_t master, std::size_t fold, std::size_t method) {
    return mix_seed(mix_seed(master) ^ mix_seed((static_cast<std::uint64_t>(fold) << 32) | method));
}

using ProgressCallback = std::function<void(std::size_t fold, const MethodSpec&)>;

/**
 * k-fold comparison of learned quantizations against the uniform baseline.
 *
 * For every fold the GA learns on the remaining folds; learned and baseline
 * genomes are then scored on the held-out fold, ranking within that fold
 * only. Each learned method is compared with the baseline by paired t-tests
 * on per-fold precision and MAP.
 */
inline MetricsReport run_experiment(const LabeledDataset& dataset, Descriptor descriptor, const ExperimentConfig& cfg,
                                    const FoldPlan& plan, const ProgressCallback& progress = {}) {
    cfg.ga.validate();
    if (plan.fold_of.size() != dataset.size())
        throw Error(ErrorCode::invalid_argument, "fold plan does not match the dataset size");
    for (std::size_t f = 0; f < plan.k; ++f)
        if (plan.fold_size(f) < 2)
            throw Error(ErrorCode::invalid_argument, "fold " + std::to_string(f) + " holds fewer than 2 items");

    const auto methods = cfg.methods();
    const auto baseline = baseline_genome(cfg.baseline_bins, cfg.ga.intervals);

    MetricsReport report{descriptor, plan.k, {}, {}};
    for (const auto& m : methods) report.methods.push_back({m, {}, {}, {}, {}, {}});

    for (std::size_t f = 0; f < plan.k; ++f) {
        const auto train_idx = plan.train_indices(f);
        const auto test_idx = plan.test_indices(f);
        const auto training = dataset.subset(train_idx);
        const auto test = dataset.subset(test_idx);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const auto& method = methods[mi];
            if (progress) progress(f, method);
            FoldMetrics fm;
            if (!method.learned) {
                fm = evaluate_genome(baseline, test, descriptor, cfg.precision_k, cfg.ga.ffp4);
            } else {
                GaConfig ga = cfg.ga;
                ga.dimension_limit = method.limit;
                ga.rng_seed = fold_seed(cfg.ga.rng_seed, f, mi);
                auto record = evolve(training, descriptor, ga);
                fm = evaluate_genome(record.best_genome, test, descriptor, cfg.precision_k, cfg.ga.ffp4);
                fm.evolution = std::move(record);
            }
            fm.fold = f;
            report.methods[mi].folds.push_back(std::move(fm));
        }
    }

    for (auto& mr : report.methods) {
        std::vector<double> dims;
        for (const auto& f : mr.folds) dims.push_back(static_cast<double>(f.dimension));
        mr.precision = summarize(mr.column(&FoldMetrics::precision));
        mr.map = summarize(mr.column(&FoldMetrics::map));
        mr.ffp4 = summarize(mr.column(&FoldMetrics::mean_ffp4));
        mr.dimension = summarize(dims);
    }

    const auto& base = report.methods.front();
    if (plan.k >= 2) {
        for (std::size_t mi = 1; mi < report.methods.size(); ++mi) {
            const auto& mr = report.methods[mi];
            report.comparisons.push_back(
                {mr.method.tag, base.method.tag,
                 stats::paired_t_test(mr.column(&FoldMetrics::precision), base.column(&FoldMetrics::precision), cfg.alpha),
                 stats::paired_t_test(mr.column(&FoldMetrics::map), base.column(&FoldMetrics::map), cfg.alpha)});
        }
    }
    return report;
}

} // namespace gaquant

#endif // GAQUANT_EXPERIMENT_HPP
