#ifndef GAQUANT_GA_HPP
#define GAQUANT_GA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "common.hpp"
#include "dataset.hpp"
#include "descriptors.hpp"
#include "quantizer.hpp"
#include "retrieval.hpp"

namespace gaquant {

struct GaConfig {
    std::size_t population_size = 200;
    std::size_t generations = 200;
    double crossover_probability = 0.60;
    double mutation_probability = 0.40;
    std::size_t tournament_size = 5;
    double elitism_fraction = 0.01;
    std::size_t top_k_recorded = 1;
    std::uint64_t rng_seed = 1;
    std::size_t intervals = kDefaultIntervals;
    /// Maximum feature dimension; unset runs without a limit.
    std::optional<std::size_t> dimension_limit;
    Ffp4Config ffp4;

    std::size_t elite_count() const {
        const auto rounded = static_cast<std::size_t>(std::llround(elitism_fraction * static_cast<double>(population_size)));
        return std::clamp<std::size_t>(rounded, 1, population_size);
    }

    void validate() const {
        auto bad = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
        if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) bad("crossover probability outside [0,1]");
        if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) bad("mutation probability outside [0,1]");
        if (!(elitism_fraction >= 0.0 && elitism_fraction <= 1.0)) bad("elitism fraction outside [0,1]");
        if (tournament_size < 1) bad("tournament size must be at least 1");
        if (population_size < tournament_size) bad("population size must be at least the tournament size");
        if (top_k_recorded < 1) bad("top_k_recorded must be at least 1");
        if (dimension_limit && *dimension_limit == 0) bad("dimension limit must be positive");
        check_intervals(intervals);
        ffp4.validate();
    }
};

/// Single seeded stream for every random decision of a run. Draws are built
/// from raw 64-bit outputs so sequences match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    /// Uniform real in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used to derive independent child seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

using Population = std::vector<QuantizationGenome>;

inline Population init_population(const GaConfig& cfg, Rng& rng) {
    Population pop;
    pop.reserve(cfg.population_size);
    std::vector<std::uint8_t> raw(3 * cfg.intervals);
    for (std::size_t i = 0; i < cfg.population_size; ++i) {
        for (auto& b : raw) b = static_cast<std::uint8_t>(rng.index(2));
        pop.push_back(repair_genome(raw, cfg.intervals));
    }
    return pop;
}

/// Draws tournament_size contestants with replacement and returns the index
/// of the fittest (lowest index on ties).
inline std::size_t tournament_select_index(std::span<const double> fitnesses, std::size_t tournament_size, Rng& rng) {
    std::size_t best = rng.index(fitnesses.size());
    for (std::size_t t = 1; t < tournament_size; ++t) {
        const std::size_t c = rng.index(fitnesses.size());
        if (fitnesses[c] > fitnesses[best] || (fitnesses[c] == fitnesses[best] && c < best)) best = c;
    }
    return best;
}

inline const QuantizationGenome& tournament_select(const Population& population, std::span<const double> fitnesses,
                                                   const GaConfig& cfg, Rng& rng) {
    return population[tournament_select_index(fitnesses, cfg.tournament_size, rng)];
}

inline void require_same_shape(const QuantizationGenome& a, const QuantizationGenome& b) {
    if (a.size() != b.size() || a.intervals() != b.intervals())
        throw Error(ErrorCode::invalid_genome, "crossover parents differ in length");
}

/// Swaps the segment [first, last) between the parents.
inline std::pair<QuantizationGenome, QuantizationGenome>
crossover_two_point(const QuantizationGenome& a, const QuantizationGenome& b, std::size_t first, std::size_t last) {
    require_same_shape(a, b);
    if (first > last || last > a.size()) throw Error(ErrorCode::invalid_argument, "bad crossover cut points");
    std::vector<std::uint8_t> ca(a.bits().begin(), a.bits().end());
    std::vector<std::uint8_t> cb(b.bits().begin(), b.bits().end());
    std::swap_ranges(ca.begin() + static_cast<std::ptrdiff_t>(first), ca.begin() + static_cast<std::ptrdiff_t>(last),
                     cb.begin() + static_cast<std::ptrdiff_t>(first));
    return {repair_genome(ca, a.intervals()), repair_genome(cb, a.intervals())};
}

inline std::pair<QuantizationGenome, QuantizationGenome>
crossover_two_point(const QuantizationGenome& a, const QuantizationGenome& b, Rng& rng) {
    require_same_shape(a, b);
    std::size_t p1 = rng.index(a.size() + 1);
    std::size_t p2 = rng.index(a.size() + 1);
    if (p1 > p2) std::swap(p1, p2);
    return crossover_two_point(a, b, p1, p2);
}

inline QuantizationGenome flip_bit(const QuantizationGenome& genome, std::size_t pos) {
    std::vector<std::uint8_t> bits(genome.bits().begin(), genome.bits().end());
    bits.at(pos) ^= 1;
    return repair_genome(bits, genome.intervals());
}

/// With the given probability flips one uniformly chosen bit (then repairs).
inline QuantizationGenome mutate_one_point(const QuantizationGenome& genome, double probability, Rng& rng) {
    if (!rng.bernoulli(probability)) return genome;
    return flip_bit(genome, rng.index(genome.size()));
}

/// Fitness handed to genomes whose feature dimension exceeds the limit.
inline constexpr double kOverLimitFitness = -1.0;

/// Mean FFP4 of the training set under the genome's quantization, or the
/// over-limit penalty when a dimension limit is set and exceeded.
inline double fitness(const QuantizationGenome& genome, const LabeledDataset& training, Descriptor descriptor,
                      const GaConfig& cfg) {
    if (cfg.dimension_limit && genome_dimension(genome, descriptor) > *cfg.dimension_limit) return kOverLimitFitness;
    const ColorMap map = decode_genome(genome);
    std::vector<FeatureVector> features;
    features.reserve(training.size());
    for (const auto& item : training.items()) features.push_back(extract(descriptor, item.image, map));
    return mean_ffp4(features, training.labels(), cfg.ffp4);
}

/// Memoizing fitness evaluator keyed on the exact bit pattern.
class FitnessCache {
public:
    FitnessCache(const LabeledDataset& training, Descriptor descriptor, const GaConfig& cfg, bool enabled = true)
        : training_(training), descriptor_(descriptor), cfg_(cfg), enabled_(enabled) {}

    double operator()(const QuantizationGenome& genome) {
        if (!enabled_) {
            ++computed_;
            return fitness(genome, training_, descriptor_, cfg_);
        }
        auto key = genome.to_string();
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        ++computed_;
        const double f = fitness(genome, training_, descriptor_, cfg_);
        cache_.emplace(std::move(key), f);
        return f;
    }

    /// Number of fitness computations actually performed.
    std::size_t computed() const noexcept { return computed_; }

private:
    const LabeledDataset& training_;
    Descriptor descriptor_;
    const GaConfig& cfg_;
    bool enabled_;
    std::unordered_map<std::string, double> cache_;
    std::size_t computed_ = 0;
};

struct GenerationRecord {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    QuantizationGenome best_genome;
    std::size_t best_dimension = 0;
    /// The top_k_recorded individuals of the generation, best first.
    std::vector<std::pair<QuantizationGenome, double>> top;
};

struct EvolutionRecord {
    std::vector<GenerationRecord> generations;
    QuantizationGenome best_genome;
    double best_fitness = 0.0;
    std::size_t best_generation = 0;
};

struct EvolveOptions {
    /// Called once per individual per generation with its fitness.
    std::function<void(const QuantizationGenome&, double)> on_evaluate;
    bool use_cache = true;
};

/**
 * Evolves quantization genomes toward maximal mean FFP4 on `training`.
 *
 * Generation 0 is the random initial population; each of the following
 * `cfg.generations` generations keeps the elite individuals verbatim and
 * fills the rest with tournament-selected parent pairs, crossed over with
 * probability crossover_probability (cloned otherwise) and then mutated.
 * The returned best genome is the argmax over every recorded generation,
 * earliest generation winning ties.
 */
inline EvolutionRecord evolve(const LabeledDataset& training, Descriptor descriptor, const GaConfig& cfg,
                              const EvolveOptions& options = {}) {
    cfg.validate();
    Rng rng(cfg.rng_seed);
    FitnessCache eval(training, descriptor, cfg, options.use_cache);

    Population population = init_population(cfg, rng);
    std::vector<double> fit(population.size());
    EvolutionRecord record{{}, population.front(), -std::numeric_limits<double>::infinity(), 0};

    const std::size_t elites = cfg.elite_count();
    std::vector<std::size_t> order(population.size());

    for (std::size_t gen = 0;; ++gen) {
        for (std::size_t i = 0; i < population.size(); ++i) {
            fit[i] = eval(population[i]);
            if (options.on_evaluate) options.on_evaluate(population[i], fit[i]);
        }

        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });

        GenerationRecord g{gen, fit[order[0]], 0.0, population[order[0]],
                           genome_dimension(population[order[0]], descriptor), {}};
        for (double f : fit) g.mean_fitness += f;
        g.mean_fitness /= static_cast<double>(fit.size());
        for (std::size_t k = 0; k < std::min(cfg.top_k_recorded, order.size()); ++k)
            g.top.emplace_back(population[order[k]], fit[order[k]]);
        if (g.best_fitness > record.best_fitness) {
            record.best_fitness = g.best_fitness;
            record.best_genome = g.best_genome;
            record.best_generation = gen;
        }
        record.generations.push_back(std::move(g));

        if (gen == cfg.generations) break;

        Population next;
        next.reserve(population.size());
        for (std::size_t e = 0; e < elites; ++e) next.push_back(population[order[e]]);
        while (next.size() < population.size()) {
            const auto& pa = tournament_select(population, fit, cfg, rng);
            const auto& pb = tournament_select(population, fit, cfg, rng);
            auto children = rng.bernoulli(cfg.crossover_probability) ? crossover_two_point(pa, pb, rng)
                                                                    : std::pair{pa, pb};
            next.push_back(mutate_one_point(children.first, cfg.mutation_probability, rng));
            if (next.size() < population.size())
                next.push_back(mutate_one_point(children.second, cfg.mutation_probability, rng));
        }
        population = std::move(next);
    }
    return record;
}

} // namespace gaquant

#endif // GAQUANT_GA_HPP
