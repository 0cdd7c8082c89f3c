#ifndef GAQUANT_STATS_HPP
#define GAQUANT_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace gaquant::stats {

inline double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
inline double sample_sd(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::invalid_argument, "incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::invalid_argument, "incomplete beta needs x in [0,1]");
    if (x == 0.0 || x == 1.0) return x;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // the fraction converges fast only on one side of the mean
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_cf(a, b, x) / a;
    return 1.0 - front * detail::beta_cf(b, a, 1.0 - x) / b;
}

/// Two-sided tail probability P(|T| >= |t|) for Student's t with df degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

enum class Verdict { different, equivalent, different_zero_variance };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::different: return "different";
    case Verdict::equivalent: return "equivalent";
    case Verdict::different_zero_variance: return "different (zero-variance)";
    }
    return "unknown";
}

struct TTestResult {
    double t = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;
    double mean_difference = 0.0;
    Verdict verdict = Verdict::equivalent;
    /// Set when the differences have zero variance and t is not finite or undefined.
    bool degenerate = false;
};

/**
 * Student's paired t-test on a - b, two-sided, sample standard deviation.
 *
 * Zero-variance differences have no finite t: identical samples report
 * "equivalent" with p = 1; a constant non-zero shift reports
 * "different (zero-variance)" with p = 0 and an infinite t carrying the
 * shift's sign. Both cases set `degenerate`.
 */
inline TTestResult paired_t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05) {
    if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "paired samples differ in length");
    if (a.size() < 2) throw Error(ErrorCode::invalid_argument, "paired t-test needs at least 2 pairs");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];

    TTestResult r;
    r.df = d.size() - 1;
    r.mean_difference = mean(d);
    const bool constant = std::all_of(d.begin(), d.end(), [&](double v) { return v == d.front(); });
    if (constant) {
        r.degenerate = true;
        r.mean_difference = d.front();
        if (r.mean_difference == 0.0) {
            r.t = 0.0;
            r.p_value = 1.0;
            r.verdict = Verdict::equivalent;
        } else {
            r.t = std::copysign(std::numeric_limits<double>::infinity(), r.mean_difference);
            r.p_value = 0.0;
            r.verdict = Verdict::different_zero_variance;
        }
        return r;
    }
    const double sd = sample_sd(d);
    r.t = r.mean_difference / (sd / std::sqrt(static_cast<double>(d.size())));
    r.p_value = student_t_two_sided_p(r.t, static_cast<double>(r.df));
    r.verdict = r.p_value < alpha ? Verdict::different : Verdict::equivalent;
    return r;
}

} // namespace gaquant::stats

#endif // GAQUANT_STATS_HPP
