#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bientropy {

/// Mean and sample standard deviation (divisor n-1, the convention that
/// reproduces the paper's exhaustive-table figures).
struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double stdev = 0.0;  // defined for n >= 2; 0 for n == 1
};

/// Single-pass Welford accumulator with an exact pairwise combine, so
/// partitioned parallel reductions merge without order-dependent surprises.
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / double(n_);
        m2_ += d * (x - mean_);
    }

    void combine(const RunningStats& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double d = o.mean_ - mean_;
        const std::size_t n = n_ + o.n_;
        m2_ += o.m2_ + d * d * (double(n_) * double(o.n_) / double(n));
        mean_ += d * double(o.n_) / double(n);
        n_ = n;
    }

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double sample_variance() const { return n_ >= 2 ? m2_ / double(n_ - 1) : 0.0; }

    SampleStats stats() const {
        if (n_ == 0) throw std::invalid_argument("stats of empty sample");
        return {n_, mean_, std::sqrt(sample_variance())};
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

inline SampleStats summarize(std::span<const double> xs) {
    RunningStats acc;
    for (double x : xs) acc.add(x);
    return acc.stats();
}

namespace detail {

/// Regularized incomplete beta I_x(a,b) by the Lentz continued fraction.
inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16, kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
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

inline double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// CDF of Student's t with (real-valued) df degrees of freedom.
inline double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_cdf: df must be positive");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double tail = 0.5 * detail::ibeta(0.5 * df, 0.5, x);
    return t < 0.0 ? tail : 1.0 - tail;
}

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_two_sided = 1.0;
};

/// Welch's unequal-variance two-sample t-test with Welch-Satterthwaite df and
/// a two-sided p-value.
inline WelchResult welch_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_test: both samples need n >= 2");
    RunningStats sa, sb;
    for (double x : a) sa.add(x);
    for (double x : b) sb.add(x);
    const double va = sa.sample_variance(), vb = sb.sample_variance();
    if (va == 0.0 && vb == 0.0)
        throw std::invalid_argument("welch_test: both samples have zero variance");
    const double ra = va / double(a.size()), rb = vb / double(b.size());
    const double se = std::sqrt(ra + rb);
    WelchResult r;
    r.t = (sa.mean() - sb.mean()) / se;
    r.df = (ra + rb) * (ra + rb) /
           (ra * ra / double(a.size() - 1) + rb * rb / double(b.size() - 1));
    r.p_two_sided = detail::ibeta(0.5 * r.df, 0.5, r.df / (r.df + r.t * r.t));
    return r;
}

/// Splits payload into the upper and lower floor(m/10) entries ranked by key
/// descending, ties broken by original index ascending. Upper is returned in
/// rank order (largest key first); lower in reverse rank order (smallest
/// first).
template <typename T>
std::pair<std::vector<T>, std::vector<T>> decile_partition(std::span<const double> keys,
                                                           std::span<const T> payload) {
    if (keys.size() != payload.size())
        throw std::invalid_argument("decile_partition: length mismatch");
    const std::size_t m = keys.size();
    if (m < 10) throw std::invalid_argument("decile_partition: need at least 10 entries");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return keys[x] > keys[y]; });
    const std::size_t q = m / 10;
    std::vector<T> upper, lower;
    upper.reserve(q);
    lower.reserve(q);
    for (std::size_t r = 0; r < q; ++r) upper.push_back(payload[order[r]]);
    for (std::size_t r = 0; r < q; ++r) lower.push_back(payload[order[m - 1 - r]]);
    return {std::move(upper), std::move(lower)};
}

}  // namespace bientropy
