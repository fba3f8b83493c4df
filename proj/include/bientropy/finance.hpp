#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bientropy/bitstring.hpp"
#include "bientropy/entropy.hpp"
#include "bientropy/errors.hpp"
#include "bientropy/rng.hpp"
#include "bientropy/stats.hpp"

namespace bientropy {

/// Day x ticker grid of strictly positive prices, days ascending.
struct PriceMatrix {
    std::vector<std::string> day_labels;     // one per row
    std::vector<std::string> ticker_labels;  // one per column
    std::vector<double> cells;               // row-major, rows x cols
    std::size_t rows = 0, cols = 0;

    double at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace detail

/// CSV ingestion: header row of ticker labels (first cell ignored), then one
/// row per day: day label followed by one strictly positive price per ticker.
inline PriceMatrix load_prices(std::istream& in) {
    PriceMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw DataError("prices: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = detail::split_csv_line(line);
    if (header.size() < 2) throw DataError("prices: header must name at least one ticker");
    m.ticker_labels.assign(header.begin() + 1, header.end());
    m.cols = m.ticker_labels.size();

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != m.cols + 1)
            throw DataError("prices row " + std::to_string(m.rows + 1) + ": expected " +
                            std::to_string(m.cols + 1) + " fields, got " +
                            std::to_string(fields.size()));
        m.day_labels.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            const std::string& cell = fields[j];
            if (cell.empty())
                throw DataError("prices row " + std::to_string(m.rows + 1) + ": missing cell");
            std::size_t consumed = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &consumed);
            } catch (const std::exception&) {
                throw DataError("prices row " + std::to_string(m.rows + 1) +
                                ": non-numeric cell '" + cell + "'");
            }
            if (consumed != cell.size())
                throw DataError("prices row " + std::to_string(m.rows + 1) +
                                ": non-numeric cell '" + cell + "'");
            if (!(v > 0.0))
                throw DataError("prices row " + std::to_string(m.rows + 1) +
                                ": zero or negative price '" + cell + "'");
            m.cells.push_back(v);
        }
        ++m.rows;
    }
    if (m.rows == 0) throw DataError("prices: no data rows");
    return m;
}

/// Binarized absolute-change grid: bit set where the day-over-day relative
/// price change exceeds the threshold R strictly; first day all zero.
struct ThresholdBits {
    std::vector<std::uint8_t> bits;  // row-major, same shape as the prices
    std::size_t rows = 0, cols = 0;
    double threshold = 0.0;

    std::uint8_t at(std::size_t i, std::size_t j) const { return bits[i * cols + j]; }

    double sparsity() const {
        std::size_t ones = 0;
        for (auto b : bits) ones += b;
        return double(ones) / double(bits.size());
    }
};

inline ThresholdBits threshold_transform(const PriceMatrix& p, double r) {
    if (r < 0.0) throw std::invalid_argument("threshold_transform: R must be >= 0");
    ThresholdBits t;
    t.rows = p.rows;
    t.cols = p.cols;
    t.threshold = r;
    t.bits.assign(p.rows * p.cols, 0);
    for (std::size_t i = 1; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j)
            if (std::fabs(p.at(i, j) / p.at(i - 1, j) - 1.0) > r) t.bits[i * p.cols + j] = 1;
    return t;
}

struct HoldingSample {
    std::size_t k = 0;            // sample index, 0-based
    std::size_t start_row = 0;    // 0-based row of the start price
    std::size_t col = 0;          // 0-based ticker column
    std::size_t holding_days = 0; // d
    double start_price = 0.0;     // S
    double close_price = 0.0;     // C
    double holding_return = 0.0;  // H = C / S
    double bientropy = 0.0;       // B over threshold bits rows i..i+31
};

struct SamplingPlan {
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    std::size_t i_max = 0;  // start rows drawn uniformly from [1, i_max], 1-based
    std::size_t d_min = 32;
    std::size_t d_max = 63;
    std::optional<std::size_t> fixed_d;   // overrides the [d_min, d_max] draw
    Metric metric = Metric::tbien;        // 32-bit power-law mode behind a flag
};

/// Seeded sampler over (start row, ticker, holding length); draw order per
/// sample is i, then j, then d, pinned for reproducibility.
class HoldingSampler {
public:
    HoldingSampler(const PriceMatrix& p, const ThresholdBits& t, const SamplingPlan& plan)
        : p_(p), t_(t), plan_(plan), rng_(plan.seed) {
        if (p.rows != t.rows || p.cols != t.cols)
            throw std::invalid_argument("sampler: price and threshold shapes differ");
        if (plan.fixed_d) {
            if (*plan.fixed_d < 32 || *plan.fixed_d > plan.d_max)
                throw std::invalid_argument("sampler: fixed d outside [32, d_max]");
        }
        if (plan.d_min < 32 || plan.d_min > plan.d_max)
            throw std::invalid_argument("sampler: need 32 <= d_min <= d_max");
        if (plan.i_max < 1 || plan.i_max + plan.d_max > p.rows)
            throw std::invalid_argument("sampler: i_max + d_max must fit inside the matrix");
        if (plan.count < 10) throw std::invalid_argument("sampler: need at least 10 samples");
    }

    HoldingSample draw() {
        HoldingSample s;
        s.k = drawn_++;
        s.start_row = std::size_t(rng_.range(1, plan_.i_max)) - 1;  // to 0-based
        s.col = std::size_t(rng_.below(p_.cols));
        s.holding_days =
            plan_.fixed_d ? *plan_.fixed_d : std::size_t(rng_.range(plan_.d_min, plan_.d_max));
        s.start_price = p_.at(s.start_row, s.col);
        s.close_price = p_.at(s.start_row + s.holding_days, s.col);
        s.holding_return = s.close_price / s.start_price;
        BitString window(32);
        for (std::size_t r = 0; r < 32; ++r)
            if (t_.at(s.start_row + r, s.col)) window.set_bit(r, true);
        s.bientropy = score(window, plan_.metric);
        return s;
    }

    const SamplingPlan& plan() const { return plan_; }

private:
    const PriceMatrix& p_;
    const ThresholdBits& t_;
    SamplingPlan plan_;
    Xoshiro256ss rng_;
    std::size_t drawn_ = 0;
};

inline std::vector<HoldingSample> sample_holdings(const PriceMatrix& p, const ThresholdBits& t,
                                                  const SamplingPlan& plan) {
    HoldingSampler sampler(p, t, plan);
    std::vector<HoldingSample> out;
    out.reserve(plan.count);
    for (std::size_t k = 0; k < plan.count; ++k) out.push_back(sampler.draw());
    return out;
}

struct DecileSide {
    double mean_return = 0.0;  // sum of closes over sum of starts
    double stdev = 0.0;        // sample stdev of per-sample holding returns
    std::size_t size = 0;
};

struct DecileReport {
    double threshold = 0.0;
    std::size_t samples = 0;
    DecileSide upper, lower;
    double sparsity = 0.0;
    std::size_t outliers_replaced = 0;
};

/// Flags holding returns more than outlier_sd sample stdevs from the mean of
/// the initial draw, replaces them with further draws from the continuing
/// seeded stream (accepting only in-bounds returns) until the count is
/// restored, then splits by BiEntropy deciles.
inline DecileReport decile_report(std::vector<HoldingSample> samples, HoldingSampler& resampler,
                                  double outlier_sd = 3.0) {
    if (samples.size() < 10) throw std::invalid_argument("decile_report: need >= 10 samples");
    const std::size_t count = samples.size();

    RunningStats h_acc;
    for (const auto& s : samples) h_acc.add(s.holding_return);
    const double mean = h_acc.mean();
    const double sd = std::sqrt(h_acc.sample_variance());
    const double lo = mean - outlier_sd * sd, hi = mean + outlier_sd * sd;

    DecileReport rep;
    std::vector<HoldingSample> kept;
    kept.reserve(count);
    for (auto& s : samples)
        if (s.holding_return >= lo && s.holding_return <= hi) kept.push_back(std::move(s));
    rep.outliers_replaced = count - kept.size();

    std::size_t guard = 0;
    while (kept.size() < count) {
        if (++guard > 1000 * count)
            throw DataError("decile_report: cannot restore sample count, returns too dispersed");
        HoldingSample s = resampler.draw();
        if (s.holding_return >= lo && s.holding_return <= hi) kept.push_back(std::move(s));
    }
    if (kept.size() < 10) throw std::invalid_argument("decile_report: fewer than 10 survivors");

    std::vector<double> keys;
    keys.reserve(count);
    for (const auto& s : kept) keys.push_back(s.bientropy);
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    auto [upper_idx, lower_idx] =
        decile_partition<std::size_t>(keys, std::span<const std::size_t>(idx));

    auto side = [&](const std::vector<std::size_t>& ids) {
        DecileSide s;
        s.size = ids.size();
        double sum_c = 0.0, sum_s = 0.0;
        RunningStats h;
        for (std::size_t i : ids) {
            sum_c += kept[i].close_price;
            sum_s += kept[i].start_price;
            h.add(kept[i].holding_return);
        }
        s.mean_return = sum_c / sum_s;
        s.stdev = std::sqrt(h.sample_variance());
        return s;
    };

    rep.samples = count;
    rep.upper = side(upper_idx);
    rep.lower = side(lower_idx);
    return rep;
}

/// The full pipeline: draw `plan.count` samples, apply the outlier policy,
/// report decile returns and matrix sparsity.
inline DecileReport run_decile_pipeline(const PriceMatrix& p, const ThresholdBits& t,
                                        const SamplingPlan& plan, double outlier_sd = 3.0) {
    HoldingSampler sampler(p, t, plan);
    std::vector<HoldingSample> samples;
    samples.reserve(plan.count);
    for (std::size_t k = 0; k < plan.count; ++k) samples.push_back(sampler.draw());
    DecileReport rep = decile_report(std::move(samples), sampler, outlier_sd);
    rep.threshold = t.threshold;
    rep.sparsity = t.sparsity();
    return rep;
}

}  // namespace bientropy
