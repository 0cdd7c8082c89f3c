#ifndef GAQUANT_REPORT_IO_HPP
#define GAQUANT_REPORT_IO_HPP

#include <charconv>
#include <cmath>
#include <filesystem>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "dataset_io.hpp"
#include "descriptors.hpp"
#include "experiment.hpp"
#include "ga.hpp"
#include "quantizer.hpp"
#include "stats.hpp"

namespace gaquant {

/// Shortest round-trip decimal rendering; identical on every run.
inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

// Genome files --------------------------------------------------------------

inline void write_genome(const std::filesystem::path& path, const QuantizationGenome& genome) {
    write_file(path, genome.to_string() + "\n");
}

inline QuantizationGenome read_genome(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::io_error, "genome file not found: " + path.string());
    try {
        return parse_genome(read_file(path));
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ":1: " + e.what());
    }
}

// Feature files: "<descriptor> <dimension> <v1> ... <vn>" per line ---------

inline void write_features(std::ostream& out, std::span<const FeatureVector> features) {
    for (const auto& fv : features) {
        out << to_string(fv.descriptor) << ' ' << fv.dimension();
        for (double v : fv.values) out << ' ' << format_number(v);
        out << '\n';
    }
}

inline std::vector<FeatureVector> read_features(std::istream& in) {
    std::vector<FeatureVector> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fail = [&](const std::string& what) {
            throw Error(ErrorCode::decode_error, "feature line " + std::to_string(line_no) + ": " + what);
        };
        std::istringstream ls(line);
        std::string tag;
        std::size_t dim = 0;
        if (!(ls >> tag >> dim)) fail("missing descriptor or dimension");
        FeatureVector fv;
        try {
            fv.descriptor = parse_descriptor(tag);
        } catch (const Error&) {
            fail("unknown descriptor '" + tag + "'");
        }
        std::string tok;
        while (ls >> tok) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || p != tok.data() + tok.size()) fail("bad value '" + tok + "'");
            fv.values.push_back(v);
        }
        if (fv.values.size() != dim) fail("expected " + std::to_string(dim) + " values, got " + std::to_string(fv.values.size()));
        out.push_back(std::move(fv));
    }
    return out;
}

// CSV outputs ----------------------------------------------------------------

inline void write_evolution_csv(std::ostream& out, const EvolutionRecord& record) {
    out << "generation,best_fitness,mean_fitness,best_dimension,best_genome_bits\n";
    for (const auto& g : record.generations)
        out << g.generation << ',' << format_number(g.best_fitness) << ',' << format_number(g.mean_fitness) << ','
            << g.best_dimension << ',' << g.best_genome.to_string() << '\n';
}

inline void write_metrics_csv(std::ostream& out, const FoldMetrics& m) {
    out << "query_id,class,p_at_10,ap,ffp4\n";
    for (const auto& q : m.queries)
        out << q.image_id << ',' << q.class_name << ',' << format_number(q.precision) << ','
            << format_number(q.average_precision) << ',' << format_number(q.ffp4) << '\n';
    out << "mean,," << format_number(m.precision) << ',' << format_number(m.map) << ',' << format_number(m.mean_ffp4)
        << '\n';
}

inline void write_pr_csv(std::ostream& out, const PrCurve& curve) {
    out << "recall_level,precision\n";
    for (const auto& p : curve.points) out << format_number(p.recall) << ',' << format_number(p.precision) << '\n';
}

// JSON report ----------------------------------------------------------------

inline nlohmann::json to_json(const stats::TTestResult& t) {
    return {{"t", std::isfinite(t.t) ? nlohmann::json(t.t) : nlohmann::json(format_number(t.t))},
            {"p_value", t.p_value},
            {"df", t.df},
            {"mean_difference", t.mean_difference},
            {"verdict", stats::to_string(t.verdict)},
            {"degenerate", t.degenerate}};
}

inline nlohmann::json to_json(const Summary& s) { return {{"mean", s.mean}, {"sd", s.sd}}; }

inline nlohmann::json to_json(const MetricsReport& report) {
    nlohmann::json methods = nlohmann::json::array();
    for (const auto& mr : report.methods) {
        nlohmann::json folds = nlohmann::json::array();
        for (const auto& f : mr.folds) {
            nlohmann::json pr = nlohmann::json::array();
            for (const auto& p : f.pr.points) pr.push_back({p.recall, p.precision});
            nlohmann::json jf{{"fold", f.fold},
                              {"dimension", f.dimension},
                              {"precision_k", f.precision_k},
                              {"p_at_10", f.precision},
                              {"map", f.map},
                              {"mean_ffp4", f.mean_ffp4},
                              {"pr_curve", pr},
                              {"flagged_queries", f.flagged_queries},
                              {"genome", f.genome ? f.genome->to_string() : ""}};
            if (f.evolution) {
                jf["train_fitness"] = f.evolution->best_fitness;
                jf["best_generation"] = f.evolution->best_generation;
            }
            folds.push_back(std::move(jf));
        }
        nlohmann::json jm{{"tag", mr.method.tag},
                          {"learned", mr.method.learned},
                          {"folds", folds},
                          {"aggregate",
                           {{"p_at_10", to_json(mr.precision)},
                            {"map", to_json(mr.map)},
                            {"mean_ffp4", to_json(mr.ffp4)},
                            {"dimension", to_json(mr.dimension)}}}};
        jm["limit"] = mr.method.limit ? nlohmann::json(*mr.method.limit) : nlohmann::json(nullptr);
        methods.push_back(std::move(jm));
    }
    nlohmann::json tests = nlohmann::json::array();
    for (const auto& c : report.comparisons)
        tests.push_back({{"method", c.method}, {"baseline", c.baseline}, {"p_at_10", to_json(c.precision)}, {"map", to_json(c.map)}});
    return {{"descriptor", to_string(report.descriptor)}, {"folds", report.k}, {"methods", methods}, {"t_tests", tests}};
}

inline nlohmann::json to_json(const DatasetManifest& manifest) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : manifest.entries)
        entries.push_back({{"class", e.class_name}, {"path", e.relative_path}, {"decoded", e.decoded}, {"reason", e.reason}});
    return {{"root", manifest.root}, {"classes", manifest.classes}, {"entries", entries}, {"skipped", manifest.skipped()}};
}

} // namespace gaquant

#endif // GAQUANT_REPORT_IO_HPP
