// gaquant: learn color quantizations with a genetic algorithm and evaluate
// the resulting BIC/GCH descriptors on content-based image retrieval.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gaquant/commands.hpp"
#include "gaquant/config.hpp"

namespace {

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag kFlags[] = {
    {"--dataset", "dataset", "Dataset root laid out as <root>/<class>/<image>.ppm"},
    {"--descriptor", "descriptor", "Descriptor: bic or gch"},
    {"--genome", "genome", "Genome file (extract)"},
    {"--baseline", "baseline", "Uniform bins per axis (extract; evaluate baseline, default 4)"},
    {"--limit", "limit", "Dimension limit(s), comma separated"},
    {"--folds", "folds", "Cross-validation folds (default 5)"},
    {"--seed", "seed", "Master RNG seed"},
    {"--out", "out", "Output file (extract) or directory (optimize, evaluate)"},
    {"--population", "population", "GA population size (default 200)"},
    {"--generations", "generations", "GA generations (default 200)"},
    {"--crossover", "crossover", "Two-point crossover probability (default 0.6)"},
    {"--mutation", "mutation", "One-point mutation probability (default 0.4)"},
    {"--tournament", "tournament", "Tournament size (default 5)"},
    {"--elitism", "elitism", "Elite fraction of the population (default 0.01)"},
    {"--n", "n", "Reference intervals per color axis (default 8)"},
};

struct CommandArgs {
    std::string config_file;
    bool baseline_only = false;
    std::map<std::string, std::string> values;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* description, CommandArgs& args) {
    auto* cmd = app.add_subcommand(name, description);
    cmd->add_option("--config", args.config_file, "key = value config file; flags override it");
    for (const auto& f : kFlags) cmd->add_option(f.name, args.values[f.key], f.help);
    return cmd;
}

gaquant::RunConfig build_config(CLI::App& cmd, const CommandArgs& args) {
    gaquant::RunConfig cfg;
    if (!args.config_file.empty()) cfg = gaquant::load_config_file(args.config_file);
    for (const auto& f : kFlags)
        if (cmd.count(f.name) > 0) gaquant::apply_setting(cfg, f.key, args.values.at(f.key));
    if (args.baseline_only) cfg.baseline_only = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genetic-algorithm color quantization for BIC/GCH retrieval"};
    app.require_subcommand(1);

    CommandArgs extract_args, optimize_args, evaluate_args;
    auto* extract = add_command(app, "extract", "Write feature vectors for every dataset image", extract_args);
    auto* optimize = add_command(app, "optimize", "Learn a quantization on the whole dataset", optimize_args);
    auto* evaluate = add_command(app, "evaluate", "k-fold comparison of learned vs baseline quantizations", evaluate_args);
    evaluate->add_flag("--baseline-only", evaluate_args.baseline_only, "Evaluate only the uniform baseline");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) {
            const auto r = gaquant::commands::cmd_extract(build_config(*extract, extract_args));
            std::cout << "wrote " << r.rows << " feature vectors of dimension " << r.dimension << "\n";
        } else if (optimize->parsed()) {
            const auto cfg = build_config(*optimize, optimize_args);
            const auto record = gaquant::commands::cmd_optimize(cfg);
            std::cout << "best fitness " << record.best_fitness << " at generation " << record.best_generation
                      << ", dimension " << gaquant::genome_dimension(record.best_genome, cfg.descriptor) << "\n"
                      << record.best_genome.to_string() << "\n";
        } else if (evaluate->parsed()) {
            gaquant::commands::EvaluateOptions opts;
            opts.progress = [](std::size_t fold, const gaquant::MethodSpec& m) {
                std::cerr << "fold " << fold << ": " << m.tag << "\n";
            };
            gaquant::commands::cmd_evaluate(build_config(*evaluate, evaluate_args), std::cout, opts);
        }
    } catch (const gaquant::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
