#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gaquant/quantizer.hpp"

using namespace gaquant;

namespace {

std::vector<std::uint8_t> axis_pattern(std::initializer_list<int> r, std::initializer_list<int> g,
                                       std::initializer_list<int> b) {
    std::vector<std::uint8_t> bits;
    for (auto seg : {r, g, b})
        for (int v : seg) bits.push_back(static_cast<std::uint8_t>(v));
    return bits;
}

std::array<std::size_t, 3> sizes(const ColorMap& m) {
    return {m.axis_size(Axis::r), m.axis_size(Axis::g), m.axis_size(Axis::b)};
}

} // namespace

TEST(RepairGenome, AllZeroGetsLeadingBitsOnly) {
    const auto g = repair_genome(std::vector<std::uint8_t>(24, 0));
    for (std::size_t i = 0; i < 24; ++i) EXPECT_EQ(g.bit(i), i == 0 || i == 8 || i == 16) << i;
    EXPECT_EQ(sizes(decode_genome(g)), (std::array<std::size_t, 3>{1, 1, 1}));
}

TEST(RepairGenome, AllOnesUnchanged) {
    const std::vector<std::uint8_t> ones(24, 1);
    const auto g = repair_genome(ones);
    EXPECT_TRUE(std::equal(ones.begin(), ones.end(), g.bits().begin()));
    EXPECT_EQ(sizes(decode_genome(g)), (std::array<std::size_t, 3>{8, 8, 8}));
}

TEST(RepairGenome, ClearLeadingBitIsSet) {
    std::vector<std::uint8_t> bits(24, 1);
    bits[0] = 0;
    const auto g = repair_genome(bits);
    EXPECT_TRUE(g.bit(0));
    EXPECT_EQ(sizes(decode_genome(g)), (std::array<std::size_t, 3>{8, 8, 8}));
}

TEST(RepairGenome, LengthMismatchIsInvalidGenome) {
    try {
        repair_genome(std::vector<std::uint8_t>(23, 1));
        FAIL() << "expected throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_genome);
    }
}

TEST(DecodeGenome, AllOnesIsThirtyTwoWideIntervals) {
    const auto m = decode_genome(baseline_genome(8));
    for (int v = 0; v < 256; ++v)
        for (auto a : {Axis::r, Axis::g, Axis::b}) EXPECT_EQ(m.table(a)[v], v / 32);
}

TEST(DecodeGenome, AlternatingPatternIsClassicalSixtyFourColors) {
    const auto g = repair_genome(axis_pattern({1, 0, 1, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 1, 0, 1, 0}));
    const auto m = decode_genome(g);
    EXPECT_EQ(sizes(m), (std::array<std::size_t, 3>{4, 4, 4}));
    EXPECT_EQ(m.color_count(), 64u);
    for (int v = 0; v < 256; ++v)
        for (auto a : {Axis::r, Axis::g, Axis::b}) EXPECT_EQ(m.table(a)[v], v / 64);
}

TEST(DecodeGenome, MergedTailOnRedAxis) {
    const auto g = repair_genome(axis_pattern({1, 1, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1, 1, 1}));
    const auto m = decode_genome(g);
    EXPECT_EQ(sizes(m), (std::array<std::size_t, 3>{2, 8, 8}));
    for (int v = 0; v < 256; ++v) EXPECT_EQ(m.table(Axis::r)[v], v < 32 ? 0 : 1) << v;
}

TEST(QuantizePixel, BaselineCornersAndInterior) {
    const auto m = decode_genome(baseline_genome(4));
    EXPECT_EQ(quantize_pixel(m, 0, 0, 0), 0u);
    EXPECT_EQ(quantize_pixel(m, 255, 255, 255), 63u);
    EXPECT_EQ(quantize_pixel(m, 100, 200, 50), 28u);
}

TEST(GenomeDimension, DescriptorSizes) {
    EXPECT_EQ(genome_dimension(baseline_genome(4), Descriptor::gch), 64u);
    EXPECT_EQ(genome_dimension(baseline_genome(4), Descriptor::bic), 128u);
    EXPECT_EQ(genome_dimension(baseline_genome(8), Descriptor::bic), 1024u);
}

TEST(BaselineGenome, Patterns) {
    EXPECT_EQ(baseline_genome(4).to_string(), "101010101010101010101010");
    EXPECT_EQ(baseline_genome(8).to_string(), std::string(24, '1'));
    EXPECT_EQ(baseline_genome(1).to_string(), "100000001000000010000000");
    EXPECT_EQ(baseline_genome(2, 4).to_string(), "101010101010");
}

TEST(BaselineGenome, NonDivisorRejected) {
    try {
        baseline_genome(3);
        FAIL() << "expected throw";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
    }
    EXPECT_THROW(baseline_genome(0), Error);
}

TEST(GenomeText, ParseAcceptsTrailingNewlineAndRejectsClearLeadingBit) {
    EXPECT_EQ(parse_genome("101010101010101010101010\n"), baseline_genome(4));
    EXPECT_THROW(parse_genome("001010101010101010101010\n"), Error);
    EXPECT_THROW(parse_genome("10101010101010101010101x"), Error);
    EXPECT_THROW(parse_genome("1010"), Error);
    EXPECT_THROW(parse_genome(""), Error);
}

// Properties over random raw bit strings, for several interval counts.

class QuantizerProperty : public ::testing::TestWithParam<std::size_t> {};

TEST_P(QuantizerProperty, DecodeOfRepairIsAValidMap) {
    const std::size_t n = GetParam();
    std::mt19937_64 rng(n * 7919);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint8_t> raw(3 * n);
        for (auto& b : raw) b = rng() & 1;
        const auto g = repair_genome(raw, n);
        EXPECT_TRUE(g.bit(0) && g.bit(n) && g.bit(2 * n));
        const auto m = decode_genome(g);
        EXPECT_GE(m.color_count(), 1u);
        EXPECT_LE(m.color_count(), n * n * n);
        EXPECT_EQ(genome_dimension(g, Descriptor::bic), 2 * genome_dimension(g, Descriptor::gch));
        for (auto a : {Axis::r, Axis::g, Axis::b}) {
            const auto& t = m.table(a);
            EXPECT_EQ(t[0], 0);
            EXPECT_EQ(t[255], m.axis_size(a) - 1);
            for (int v = 1; v < 256; ++v) {
                ASSERT_GE(t[v], t[v - 1]);
                // steps only where a reference interval starts
                if (t[v] != t[v - 1]) { EXPECT_NE(v * n / 256, (v - 1) * n / 256) << v; }
            }
        }
    }
}

TEST_P(QuantizerProperty, FlatIndexIsABijectionOnAxisTriples) {
    const std::size_t n = GetParam();
    std::mt19937_64 rng(n * 104729);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint8_t> raw(3 * n);
        for (auto& b : raw) b = rng() & 1;
        const auto m = decode_genome(repair_genome(raw, n));
        // one representative channel value per bin on each axis
        std::array<std::vector<int>, 3> reps;
        for (std::size_t a = 0; a < 3; ++a)
            for (int v = 0; v < 256; ++v)
                if (v == 0 || m.table(static_cast<Axis>(a))[v] != m.table(static_cast<Axis>(a))[v - 1]) reps[a].push_back(v);
        std::set<std::size_t> seen;
        for (int r : reps[0])
            for (int g : reps[1])
                for (int b : reps[2]) {
                    const auto idx = m.quantize(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b));
                    EXPECT_LT(idx, m.color_count());
                    EXPECT_TRUE(seen.insert(idx).second);
                }
        EXPECT_EQ(seen.size(), m.color_count());
    }
}

INSTANTIATE_TEST_SUITE_P(Intervals, QuantizerProperty, ::testing::Values(1, 2, 4, 8, 16));

TEST(QuantizePixel, AllOnesDiagonal) {
    const auto m = decode_genome(baseline_genome(8));
    for (int v = 0; v < 256; ++v)
        EXPECT_EQ(m.quantize(static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v)),
                  static_cast<std::size_t>(v / 32) * (64 + 8 + 1));
}
