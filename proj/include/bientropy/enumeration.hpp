#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "bientropy/bitstring.hpp"
#include "bientropy/entropy.hpp"
#include "bientropy/stats.hpp"

namespace bientropy {

struct EnumRow {
    std::uint32_t value = 0;
    double bien = 0.0;
    double tbien = 0.0;
    PeriodClass cls = PeriodClass::nperiodic;
};

struct EnumerationTable {
    std::size_t n = 0;
    bool has_bien = false;
    bool has_tbien = false;
    std::vector<EnumRow> rows;  // 2^n rows, indexed by value
    SampleStats bien_stats, tbien_stats;
    std::size_t periodic_count = 0, nperiodic_count = 0, aperiodic_count = 0;
    double adjusted_r2 = 0.0;  // tbien ~ bien, when both metrics present
};

struct EnumerateOptions {
    bool bien = true;
    bool tbien = true;
    unsigned threads = 0;  // 0 = hardware concurrency
};

namespace detail {

struct MomentSums {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::size_t n = 0;
    void add(double x, double y) {
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
        ++n;
    }
    void combine(const MomentSums& o) {
        sx += o.sx;
        sy += o.sy;
        sxx += o.sxx;
        syy += o.syy;
        sxy += o.sxy;
        n += o.n;
    }
};

inline double adjusted_r2_from_moments(const MomentSums& m) {
    if (m.n < 3) throw std::invalid_argument("adjusted R^2 needs at least 3 points");
    const double nn = double(m.n);
    const double cxx = m.sxx - m.sx * m.sx / nn;
    const double cyy = m.syy - m.sy * m.sy / nn;
    const double cxy = m.sxy - m.sx * m.sy / nn;
    if (cxx <= 0.0) throw std::invalid_argument("adjusted R^2: x has zero variance");
    const double r2 = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
    return 1.0 - (1.0 - r2) * (nn - 1.0) / (nn - 2.0);
}

// Word-local periodicity of an n-bit value (bit i of v = digit i+1).
inline PeriodClass classify_value(std::uint32_t v, std::size_t n) {
    std::uint64_t w = v;
    for (std::size_t len = n; len > 1; --len) w ^= w >> 1;
    if (w & 1u) return PeriodClass::aperiodic;
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p) continue;
        const std::uint64_t mask = (std::uint64_t(1) << (n - p)) - 1;
        if (((std::uint64_t(v) ^ (std::uint64_t(v) >> p)) & mask) == 0) return PeriodClass::periodic;
    }
    return PeriodClass::nperiodic;
}

}  // namespace detail

/// 1 - (1-R^2)(m-1)/(m-2) for the simple linear regression of y on x.
inline double adjusted_r_squared(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("adjusted R^2: length mismatch");
    detail::MomentSums m;
    for (std::size_t i = 0; i < x.size(); ++i) m.add(x[i], y[i]);
    return detail::adjusted_r2_from_moments(m);
}

/// Evaluates every n-bit string: scores, periodicity class, per-metric sample
/// stats and the tbien~bien adjusted R^2. Work is split into fixed-size blocks
/// merged in block order, so results do not depend on the thread count.
inline EnumerationTable enumerate_strings(std::size_t n, EnumerateOptions opt = {}) {
    if (n < 2 || n > 24) throw std::invalid_argument("enumerate: n must be in [2, 24]");
    if (!opt.bien && !opt.tbien) throw std::invalid_argument("enumerate: no metric selected");

    const std::uint64_t total = std::uint64_t(1) << n;
    EnumerationTable table;
    table.n = n;
    table.has_bien = opt.bien;
    table.has_tbien = opt.tbien;
    table.rows.resize(total);

    // H(ones/len) lookup, flat-indexed [len * (n+1) + ones].
    std::vector<double> h_table((n + 1) * (n + 1), 0.0);
    for (std::size_t len = 1; len <= n; ++len)
        for (std::size_t ones = 0; ones <= len; ++ones)
            h_table[len * (n + 1) + ones] = detail::shannon_entropy_counts(ones, len);

    struct BlockResult {
        RunningStats bien_acc, tbien_acc;
        detail::MomentSums moments;
        std::array<std::size_t, 3> counts{};
    };

    constexpr std::uint64_t kBlock = 1 << 14;
    const std::size_t nblocks = std::size_t((total + kBlock - 1) / kBlock);
    std::vector<BlockResult> blocks(nblocks);

    auto run_block = [&](std::size_t bi) {
        BlockResult& out = blocks[bi];
        std::vector<double> hs;
        hs.reserve(n - 1);
        const std::uint64_t lo = bi * kBlock, hi = std::min(total, lo + kBlock);
        for (std::uint64_t v = lo; v < hi; ++v) {
            hs.clear();
            std::uint64_t w = v;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                const std::size_t len = n - k;
                const std::uint64_t mask = (std::uint64_t(1) << len) - 1;
                const std::size_t ones = std::size_t(std::popcount(w & mask));
                hs.push_back(h_table[len * (n + 1) + ones]);
                w ^= w >> 1;
            }
            EnumRow& row = table.rows[v];
            row.value = std::uint32_t(v);
            row.cls = detail::classify_value(std::uint32_t(v), n);
            ++out.counts[std::size_t(row.cls)];
            if (opt.bien) {
                row.bien = detail::power_law_score(hs);
                out.bien_acc.add(row.bien);
            }
            if (opt.tbien) {
                row.tbien = detail::weighted_score(hs, Weighting::logarithmic);
                out.tbien_acc.add(row.tbien);
            }
            if (opt.bien && opt.tbien) out.moments.add(row.bien, row.tbien);
        }
    };

    unsigned nthreads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, unsigned(nblocks)));
    if (nthreads <= 1) {
        for (std::size_t bi = 0; bi < nblocks; ++bi) run_block(bi);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t bi = next.fetch_add(1); bi < nblocks; bi = next.fetch_add(1))
                    run_block(bi);
            });
        for (auto& th : pool) th.join();
    }

    RunningStats bien_acc, tbien_acc;
    detail::MomentSums moments;
    std::array<std::size_t, 3> counts{};
    for (const auto& b : blocks) {
        bien_acc.combine(b.bien_acc);
        tbien_acc.combine(b.tbien_acc);
        moments.combine(b.moments);
        for (std::size_t c = 0; c < 3; ++c) counts[c] += b.counts[c];
    }
    if (opt.bien) table.bien_stats = bien_acc.stats();
    if (opt.tbien) table.tbien_stats = tbien_acc.stats();
    table.periodic_count = counts[std::size_t(PeriodClass::periodic)];
    table.nperiodic_count = counts[std::size_t(PeriodClass::nperiodic)];
    table.aperiodic_count = counts[std::size_t(PeriodClass::aperiodic)];
    if (opt.bien && opt.tbien) table.adjusted_r2 = detail::adjusted_r2_from_moments(moments);
    return table;
}

namespace detail {

inline double row_metric(const EnumerationTable& t, const EnumRow& r, Metric m) {
    if (m == Metric::bien) {
        if (!t.has_bien) throw std::invalid_argument("table has no bien column");
        return r.bien;
    }
    if (!t.has_tbien) throw std::invalid_argument("table has no tbien column");
    return r.tbien;
}

}  // namespace detail

/// (value, score) pairs sorted by score ascending, ties by value ascending.
inline std::vector<std::pair<std::uint32_t, double>> ascending_dump(const EnumerationTable& t,
                                                                    Metric m) {
    std::vector<std::pair<std::uint32_t, double>> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) out.emplace_back(r.value, detail::row_metric(t, r, m));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    return out;
}

/// Histogram over half-open bins [edge, edge+width) covering [0,1]; the final
/// bin absorbs scores equal to 1.0 (reachable only at n = 2).
inline std::vector<std::pair<double, std::size_t>> histogram(const EnumerationTable& t, Metric m,
                                                             double bin_width) {
    if (!(bin_width > 0.0 && bin_width <= 1.0))
        throw std::invalid_argument("histogram: bin width must be in (0, 1]");
    const std::size_t nbins = std::size_t(std::ceil(1.0 / bin_width - 1e-12));
    std::vector<std::pair<double, std::size_t>> bins(nbins);
    for (std::size_t i = 0; i < nbins; ++i) bins[i] = {double(i) * bin_width, 0};
    for (const auto& r : t.rows) {
        const double s = detail::row_metric(t, r, m);
        std::size_t idx = std::min(std::size_t(s / bin_width), nbins - 1);
        ++bins[idx].second;
    }
    return bins;
}

}  // namespace bientropy
