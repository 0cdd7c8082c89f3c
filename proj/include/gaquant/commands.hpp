#ifndef GAQUANT_COMMANDS_HPP
#define GAQUANT_COMMANDS_HPP

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "config.hpp"
#include "dataset_io.hpp"
#include "descriptors.hpp"
#include "experiment.hpp"
#include "ga.hpp"
#include "quantizer.hpp"
#include "report_io.hpp"

namespace gaquant::commands {

namespace fs = std::filesystem;

/// Tracks files written by a command and deletes them unless committed.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;

    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (auto it = files_.rbegin(); it != files_.rend(); ++it) fs::remove(*it, ec);
        for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) fs::remove(*it, ec);  // only if empty
    }

    fs::path dir(const fs::path& rel = {}) {
        const fs::path p = rel.empty() ? dir_ : dir_ / rel;
        std::vector<fs::path> missing;
        for (fs::path q = p; !q.empty() && !fs::exists(q); q = q.parent_path()) {
            missing.push_back(q);
            if (q == q.parent_path()) break;
        }
        std::error_code ec;
        fs::create_directories(p, ec);
        if (ec) throw Error(ErrorCode::io_error, "cannot create directory " + p.string() + ": " + ec.message());
        for (auto it = missing.rbegin(); it != missing.rend(); ++it) dirs_.push_back(*it);
        return p;
    }

    void write(const fs::path& rel, std::string_view contents) {
        const fs::path p = dir_ / rel;
        dir(rel.parent_path());
        write_file(p, contents);
        files_.push_back(p);
    }

    const std::vector<fs::path>& files() const noexcept { return files_; }
    void commit() noexcept { committed_ = true; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
    std::vector<fs::path> dirs_;
    bool committed_ = false;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

inline GaConfig ga_config(const RunConfig& cfg) {
    GaConfig ga = cfg.ga;
    ga.validate();
    return ga;
}

inline nlohmann::json config_echo(const RunConfig& cfg) {
    return {{"dataset", cfg.dataset},
            {"descriptor", to_string(cfg.descriptor)},
            {"folds", cfg.folds},
            {"seed", cfg.ga.rng_seed},
            {"population", cfg.ga.population_size},
            {"generations", cfg.ga.generations},
            {"crossover", cfg.ga.crossover_probability},
            {"mutation", cfg.ga.mutation_probability},
            {"tournament", cfg.ga.tournament_size},
            {"elitism", cfg.ga.elitism_fraction},
            {"elite_count", cfg.ga.elite_count()},
            {"n", cfg.ga.intervals},
            {"baseline", cfg.baseline_bins.value_or(4)},
            {"limits", cfg.limits},
            {"baseline_only", cfg.baseline_only},
            {"ffp4", {{"k8", cfg.ga.ffp4.k8}, {"k9", cfg.ga.ffp4.k9}}}};
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

struct ExtractResult {
    std::size_t rows = 0;
    std::size_t dimension = 0;
};

/// Writes one feature vector per decoded image, in manifest order, to cfg.out.
inline ExtractResult cmd_extract(const RunConfig& cfg) {
    require(!cfg.dataset.empty(), "extract needs --dataset");
    require(!cfg.out.empty(), "extract needs --out");
    require(cfg.genome.empty() != !cfg.baseline_bins.has_value(), "extract needs exactly one of --genome or --baseline");

    const QuantizationGenome genome =
        cfg.genome.empty() ? baseline_genome(*cfg.baseline_bins, cfg.ga.intervals) : read_genome(cfg.genome);
    const auto loaded = load_dataset(cfg.dataset);
    const ColorMap map = decode_genome(genome);

    std::vector<FeatureVector> features;
    features.reserve(loaded.dataset.size());
    for (const auto& item : loaded.dataset.items()) {
        try {
            features.push_back(extract(cfg.descriptor, item.image, map));
        } catch (const Error& e) {
            throw Error(e.code(), item.id + ": " + e.what());
        }
    }
    std::ostringstream os;
    write_features(os, features);

    const fs::path out(cfg.out);
    OutputSet outputs(out.parent_path().empty() ? fs::path(".") : out.parent_path());
    outputs.write(out.filename(), os.str());
    outputs.commit();
    return {features.size(), genome_dimension(genome, cfg.descriptor)};
}

/// Learns a quantization on the whole dataset; writes genome.txt and
/// evolution.csv under cfg.out.
inline EvolutionRecord cmd_optimize(const RunConfig& cfg) {
    require(!cfg.dataset.empty(), "optimize needs --dataset");
    require(!cfg.out.empty(), "optimize needs --out");
    require(cfg.limits.size() <= 1, "optimize accepts at most one --limit");
    GaConfig ga = ga_config(cfg);
    if (!cfg.limits.empty()) ga.dimension_limit = cfg.limits.front();

    const auto loaded = load_dataset(cfg.dataset);
    auto record = evolve(loaded.dataset, cfg.descriptor, ga);

    std::ostringstream log;
    write_evolution_csv(log, record);
    OutputSet outputs(cfg.out);
    outputs.dir();
    outputs.write("genome.txt", record.best_genome.to_string() + "\n");
    outputs.write("evolution.csv", log.str());
    outputs.commit();
    return record;
}

inline void print_summary(std::ostream& os, const MetricsReport& report) {
    auto verdict = [&](const std::string& tag) -> std::string {
        for (const auto& c : report.comparisons)
            if (c.method == tag) return stats::to_string(c.map.verdict);
        return "-";
    };
    os << std::left << std::setw(12) << "method" << std::right << std::setw(10) << "P@10" << std::setw(10) << "MAP"
       << std::setw(10) << "dim" << "  t-test (MAP vs baseline)\n";
    for (const auto& mr : report.methods) {
        os << std::left << std::setw(12) << mr.method.tag << std::right << std::fixed << std::setprecision(4)
           << std::setw(10) << mr.precision.mean << std::setw(10) << mr.map.mean << std::setprecision(1)
           << std::setw(10) << mr.dimension.mean << "  " << verdict(mr.method.tag) << '\n';
    }
    os.unsetf(std::ios::fixed);
}

struct EvaluateOptions {
    /// Replaces the wall-clock timestamp in the report header when set.
    std::optional<std::string> timestamp;
    ProgressCallback progress;
};

/**
 * k-fold evaluation. Output layout under cfg.out:
 *   report.json, manifest.json,
 *   fold_<f>/<method>_metrics.csv, <method>_pr.csv,
 *   fold_<f>/<method>_evolution.csv and <method>_genome.txt for learned methods.
 * Nothing is left behind when any step fails.
 */
inline MetricsReport cmd_evaluate(const RunConfig& cfg, std::ostream& summary, const EvaluateOptions& opts = {}) {
    require(!cfg.dataset.empty(), "evaluate needs --dataset");
    require(!cfg.out.empty(), "evaluate needs --out");
    ExperimentConfig ex;
    ex.ga = ga_config(cfg);
    ex.baseline_bins = cfg.baseline_bins.value_or(4);
    ex.run_nla = !cfg.baseline_only;
    if (!cfg.baseline_only) ex.limits = cfg.limits;

    const auto loaded = load_dataset(cfg.dataset);
    const auto plan = kfold_split(loaded.dataset, cfg.folds, cfg.ga.rng_seed);
    const auto report = run_experiment(loaded.dataset, cfg.descriptor, ex, plan, opts.progress);

    OutputSet outputs(cfg.out);
    outputs.dir();
    for (const auto& mr : report.methods) {
        for (const auto& f : mr.folds) {
            const fs::path fold_dir = "fold_" + std::to_string(f.fold);
            std::ostringstream metrics, pr;
            write_metrics_csv(metrics, f);
            write_pr_csv(pr, f.pr);
            outputs.write(fold_dir / (mr.method.tag + "_metrics.csv"), metrics.str());
            outputs.write(fold_dir / (mr.method.tag + "_pr.csv"), pr.str());
            if (f.evolution) {
                std::ostringstream evo;
                write_evolution_csv(evo, *f.evolution);
                outputs.write(fold_dir / (mr.method.tag + "_evolution.csv"), evo.str());
                outputs.write(fold_dir / (mr.method.tag + "_genome.txt"), f.genome->to_string() + "\n");
            }
        }
    }

    nlohmann::json doc;
    doc["header"] = {{"generator", "gaquant"}, {"timestamp", opts.timestamp.value_or(utc_timestamp())}};
    doc["config"] = config_echo(cfg);
    doc["report"] = to_json(report);
    doc["fold_assignment"] = plan.fold_of;
    outputs.write("report.json", doc.dump(2) + "\n");
    outputs.write("manifest.json", to_json(loaded.manifest).dump(2) + "\n");
    outputs.commit();

    print_summary(summary, report);
    return report;
}

} // namespace gaquant::commands

#endif // GAQUANT_COMMANDS_HPP
