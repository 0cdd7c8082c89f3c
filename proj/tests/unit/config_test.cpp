#include <gtest/gtest.h>

#include <map>

#include "gaquant/config.hpp"
#include "support/synthetic.hpp"

using namespace gaquant;

TEST(ParseConfig, KeysAndComments) {
    RunConfig cfg;
    parse_config(cfg, "# run settings\n"
                      "descriptor = gch\n"
                      "population=50   # small\n"
                      "\n"
                      "  generations = 7\n"
                      "crossover = 0.5\n"
                      "mutation = 0.25\n"
                      "tournament = 3\n"
                      "elitism = 0.1\n"
                      "seed = 12345678901\n"
                      "limit = 64, 128\n"
                      "folds = 4\n"
                      "baseline = 2\n"
                      "baseline_only = yes\n");
    EXPECT_EQ(cfg.descriptor, Descriptor::gch);
    EXPECT_EQ(cfg.ga.population_size, 50u);
    EXPECT_EQ(cfg.ga.generations, 7u);
    EXPECT_EQ(cfg.ga.crossover_probability, 0.5);
    EXPECT_EQ(cfg.ga.mutation_probability, 0.25);
    EXPECT_EQ(cfg.ga.tournament_size, 3u);
    EXPECT_EQ(cfg.ga.elitism_fraction, 0.1);
    EXPECT_EQ(cfg.ga.elite_count(), 5u);
    EXPECT_EQ(cfg.ga.rng_seed, 12345678901u);
    EXPECT_EQ(cfg.limits, (std::vector<std::size_t>{64, 128}));
    EXPECT_EQ(cfg.folds, 4u);
    EXPECT_EQ(cfg.baseline_bins, 2u);
    EXPECT_TRUE(cfg.baseline_only);
}

TEST(ParseConfig, Defaults) {
    const RunConfig cfg;
    EXPECT_EQ(cfg.ga.population_size, 200u);
    EXPECT_EQ(cfg.ga.generations, 200u);
    EXPECT_EQ(cfg.ga.crossover_probability, 0.60);
    EXPECT_EQ(cfg.ga.mutation_probability, 0.40);
    EXPECT_EQ(cfg.ga.tournament_size, 5u);
    EXPECT_EQ(cfg.ga.intervals, 8u);
    EXPECT_EQ(cfg.folds, 5u);
}

TEST(ParseConfig, UnknownKeyRejectedWithLine) {
    RunConfig cfg;
    try {
        parse_config(cfg, "seed = 1\ncolour = red\n", "run.cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::config_error);
        EXPECT_NE(std::string(e.what()).find("run.cfg:2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
    }
}

TEST(ParseConfig, BadValues) {
    RunConfig cfg;
    EXPECT_THROW(parse_config(cfg, "population = many\n"), Error);
    EXPECT_THROW(parse_config(cfg, "descriptor = sift\n"), Error);
    EXPECT_THROW(parse_config(cfg, "limit = 64,,128\n"), Error);
    EXPECT_THROW(parse_config(cfg, "limit = 0\n"), Error);
    EXPECT_THROW(parse_config(cfg, "just words\n"), Error);
    EXPECT_THROW(parse_config(cfg, "baseline_only = maybe\n"), Error);
}

TEST(ParseConfig, LaterSettingsOverride) {
    const auto dir = gaquant::testing::temp_dir("config_file");
    write_file(dir / "run.cfg", "seed = 4\npopulation = 30\n");
    RunConfig cfg = load_config_file(dir / "run.cfg");
    apply_setting(cfg, "seed", "9");
    EXPECT_EQ(cfg.ga.rng_seed, 9u);
    EXPECT_EQ(cfg.ga.population_size, 30u);
    EXPECT_THROW(load_config_file(dir / "none.cfg"), Error);
    std::filesystem::remove_all(dir);
}

TEST(ParseConfig, EveryAdvertisedKeyIsAccepted) {
    const std::map<std::string, std::string> sample{
        {"dataset", "d"}, {"descriptor", "bic"}, {"genome", "g.txt"}, {"baseline", "4"},
        {"limit", "64"}, {"folds", "5"}, {"seed", "1"}, {"out", "o"}, {"population", "10"},
        {"generations", "2"}, {"crossover", "0.6"}, {"mutation", "0.4"}, {"tournament", "5"},
        {"elitism", "0.01"}, {"n", "8"}, {"baseline_only", "false"}};
    for (const auto& key : config_keys()) {
        RunConfig cfg;
        ASSERT_TRUE(sample.count(key)) << key;
        EXPECT_NO_THROW(apply_setting(cfg, key, sample.at(key))) << key;
    }
}
