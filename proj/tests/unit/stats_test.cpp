#include <gtest/gtest.h>

#include <random>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "gaquant/stats.hpp"

using namespace gaquant::stats;

namespace {

double boost_two_sided(double t, double df) {
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

} // namespace

TEST(IncompleteBeta, MatchesBoostOnAGrid) {
    for (double a : {0.5, 1.0, 2.0, 3.5, 10.0, 49.5})
        for (double b : {0.5, 1.0, 2.5, 7.0})
            for (double x : {1e-6, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0 - 1e-9})
                EXPECT_NEAR(incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-10) << a << ' ' << b << ' ' << x;
    EXPECT_EQ(incomplete_beta(2.0, 3.0, 0.0), 0.0);
    EXPECT_EQ(incomplete_beta(2.0, 3.0, 1.0), 1.0);
    EXPECT_THROW(incomplete_beta(0.0, 1.0, 0.5), gaquant::Error);
    EXPECT_THROW(incomplete_beta(1.0, 1.0, 1.5), gaquant::Error);
}

TEST(StudentT, TwoSidedPValueMatchesBoost) {
    for (double df : {1.0, 2.0, 4.0, 9.0, 30.0})
        for (double t : {0.0, 0.3, 1.0, 2.132, 2.776, 4.604, 6.532, 12.0, -2.0})
            EXPECT_NEAR(student_t_two_sided_p(t, df), boost_two_sided(t, df), 1e-8) << t << ' ' << df;
}

TEST(PairedTTest, HandComputedExample) {
    const std::vector<double> a{30, 31, 29, 32, 30}, b{28, 29, 28, 30, 29};
    const auto r = paired_t_test(a, b);
    EXPECT_EQ(r.df, 4u);
    EXPECT_DOUBLE_EQ(r.mean_difference, 1.6);
    EXPECT_NEAR(r.t, 1.6 / (std::sqrt(0.3) / std::sqrt(5.0)), 1e-12);
    EXPECT_NEAR(r.t, 6.532, 5e-4);
    // t-table, df = 4: t_{0.005} = 4.604, so p < 0.01
    EXPECT_LT(r.p_value, 0.01);
    EXPECT_NEAR(r.p_value, boost_two_sided(r.t, 4.0), 1e-8);
    EXPECT_EQ(r.verdict, Verdict::different);
    EXPECT_FALSE(r.degenerate);
}

TEST(PairedTTest, ZeroVarianceShift) {
    const std::vector<double> a{2, 3, 4, 5, 6}, b{1, 2, 3, 4, 5};
    const auto r = paired_t_test(a, b);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.verdict, Verdict::different_zero_variance);
    EXPECT_EQ(std::string(to_string(r.verdict)), "different (zero-variance)");
    EXPECT_EQ(r.p_value, 0.0);
    EXPECT_GT(r.t, 0.0);
}

TEST(PairedTTest, IdenticalSamplesAreEquivalent) {
    const std::vector<double> a{0.1, 0.7, 0.3};
    const auto r = paired_t_test(a, a);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.verdict, Verdict::equivalent);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.mean_difference, 0.0);
}

TEST(PairedTTest, Errors) {
    const std::vector<double> one{1.0}, two{1.0, 2.0}, three{1.0, 2.0, 3.0};
    EXPECT_THROW(paired_t_test(one, one), gaquant::Error);
    EXPECT_THROW(paired_t_test(two, three), gaquant::Error);
}

TEST(PairedTTest, Antisymmetric) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a, b;
        for (int i = 0; i < 5; ++i) {
            a.push_back(n(rng));
            b.push_back(n(rng));
        }
        const auto ab = paired_t_test(a, b), ba = paired_t_test(b, a);
        EXPECT_EQ(ab.t, -ba.t);
        EXPECT_EQ(ab.p_value, ba.p_value);
        EXPECT_GE(ab.p_value, 0.0);
        EXPECT_LE(ab.p_value, 1.0);
    }
}

TEST(Summary, MeanAndSampleSd) {
    const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
    EXPECT_DOUBLE_EQ(mean(x), 5.0);
    EXPECT_DOUBLE_EQ(sample_sd(x), std::sqrt(32.0 / 7.0));
    EXPECT_EQ(sample_sd(std::vector<double>{3.0}), 0.0);
}
