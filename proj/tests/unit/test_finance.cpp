#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "bientropy/finance.hpp"

using bientropy::DataError;
using bientropy::PriceMatrix;
using bientropy::SamplingPlan;
using bientropy::ThresholdBits;
using Catch::Approx;

namespace {

PriceMatrix parse(const std::string& csv) {
    std::istringstream in(csv);
    return bientropy::load_prices(in);
}

// 200 days x 6 tickers: columns 0/1 toggle around a drift so their threshold
// bits stay busy; the rest are constant.
PriceMatrix synthetic_matrix() {
    PriceMatrix m;
    m.rows = 200;
    m.cols = 6;
    for (std::size_t j = 0; j < m.cols; ++j) m.ticker_labels.push_back("T" + std::to_string(j));
    for (std::size_t i = 0; i < m.rows; ++i) m.day_labels.push_back("d" + std::to_string(i));
    m.cells.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            double v = 100.0 + double(j);
            if (j < 2) {
                const bool high = ((i * (j + 3) + i * i / 7) % 2) != 0;
                v = 100.0 * (1.0 + (high ? 0.03 : 0.0));
            }
            m.cells[i * m.cols + j] = v;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("load_prices") {
    const auto m = parse("day,AAA,BBB\nd1,100,200\nd2,101,199\nd3,102,198\n");
    CHECK(m.rows == 3);
    CHECK(m.cols == 2);
    CHECK(m.ticker_labels == std::vector<std::string>{"AAA", "BBB"});
    CHECK(m.at(0, 0) == 100.0);
    CHECK(m.at(2, 1) == 198.0);

    CHECK_THROWS_AS(parse("day,AAA\nd1,0\n"), DataError);        // zero price
    CHECK_THROWS_AS(parse("day,AAA\nd1,-5\n"), DataError);       // negative
    CHECK_THROWS_AS(parse("day,AAA,BBB\nd1,100\n"), DataError);  // ragged
    CHECK_THROWS_AS(parse("day,AAA\nd1,abc\n"), DataError);      // non-numeric
    CHECK_THROWS_AS(parse("day,AAA,BBB\nd1,100,\n"), DataError); // missing cell
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("day,AAA\n"), DataError);  // header only
}

TEST_CASE("threshold_transform") {
    const auto m = parse("day,A\nd1,100\nd2,101\n");
    const auto t = bientropy::threshold_transform(m, 0.005);
    CHECK(t.at(0, 0) == 0);  // first day fixed at zero
    CHECK(t.at(1, 0) == 1);  // |101/100 - 1| = 0.01 > 0.005

    const auto huge = bientropy::threshold_transform(m, 10.0);
    CHECK(huge.sparsity() == 0.0);

    // R = 0: a bit wherever consecutive prices differ at all
    const auto m2 = parse("day,A,B\nd1,100,50\nd2,100,51\nd3,99,51\n");
    const auto t0 = bientropy::threshold_transform(m2, 0.0);
    CHECK(t0.at(1, 0) == 0);
    CHECK(t0.at(1, 1) == 1);
    CHECK(t0.at(2, 0) == 1);
    CHECK(t0.at(2, 1) == 0);

    CHECK_THROWS_AS(bientropy::threshold_transform(m, -0.1), std::invalid_argument);
}

TEST_CASE("threshold monotonicity: raising R never sets new bits") {
    const auto m = synthetic_matrix();
    double prev_sparsity = 1.0;
    ThresholdBits prev;
    bool have_prev = false;
    for (double r : {0.0, 0.005, 0.01, 0.02, 0.03}) {
        const auto t = bientropy::threshold_transform(m, r);
        if (have_prev) {
            for (std::size_t i = 0; i < t.bits.size(); ++i)
                if (t.bits[i]) CHECK(prev.bits[i]);  // 1 at higher R implies 1 at lower R
        }
        CHECK(t.sparsity() <= prev_sparsity);
        prev_sparsity = t.sparsity();
        prev = t;
        have_prev = true;
    }
}

TEST_CASE("sample_holdings is seed-deterministic") {
    const auto m = synthetic_matrix();
    const auto t = bientropy::threshold_transform(m, 0.01);
    SamplingPlan plan;
    plan.count = 50;
    plan.seed = 42;
    plan.i_max = m.rows - plan.d_max;

    const auto a = bientropy::sample_holdings(m, t, plan);
    const auto b = bientropy::sample_holdings(m, t, plan);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].start_row == b[i].start_row);
        CHECK(a[i].col == b[i].col);
        CHECK(a[i].holding_days == b[i].holding_days);
        CHECK(a[i].holding_return == b[i].holding_return);
        CHECK(a[i].bientropy == b[i].bientropy);
        CHECK(a[i].holding_days >= 32);
        CHECK(a[i].holding_days <= 63);
        CHECK(a[i].start_row + 1 >= 1);
        CHECK(a[i].start_row + 1 <= plan.i_max);
    }

    plan.seed = 43;
    const auto c = bientropy::sample_holdings(m, t, plan);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i)
        any_diff = any_diff || a[i].start_row != c[i].start_row || a[i].col != c[i].col;
    CHECK(any_diff);

    plan.fixed_d = 48;
    const auto fixed = bientropy::sample_holdings(m, t, plan);
    for (const auto& s : fixed) CHECK(s.holding_days == 48);
}

TEST_CASE("constant columns yield B = 0 and H = 1") {
    const auto m = synthetic_matrix();
    const auto t = bientropy::threshold_transform(m, 0.01);
    SamplingPlan plan;
    plan.count = 200;
    plan.seed = 7;
    plan.i_max = m.rows - plan.d_max;
    for (const auto& s : bientropy::sample_holdings(m, t, plan)) {
        if (s.col >= 2) {  // constant columns
            CHECK(s.bientropy == 0.0);
            CHECK(s.holding_return == 1.0);
        }
    }
}

TEST_CASE("decile report on equal returns") {
    const auto m = synthetic_matrix();
    const auto t = bientropy::threshold_transform(m, 0.01);
    SamplingPlan plan;
    plan.count = 100;
    plan.seed = 3;
    plan.i_max = m.rows - plan.d_max;

    // toggle columns have H in a narrow band around 1; constant ones exactly 1
    const auto rep = bientropy::run_decile_pipeline(m, t, plan);
    CHECK(rep.samples == 100);
    CHECK(rep.upper.size == 10);
    CHECK(rep.lower.size == 10);
    CHECK(rep.sparsity == t.sparsity());

    // with no outliers, the report matches the unfiltered computation
    if (rep.outliers_replaced == 0) {
        const auto samples = bientropy::sample_holdings(m, t, plan);
        std::vector<double> keys;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            keys.push_back(samples[i].bientropy);
            idx.push_back(i);
        }
        auto [upper, lower] = bientropy::decile_partition<std::size_t>(keys, idx);
        double sum_c = 0, sum_s = 0;
        for (auto i : upper) {
            sum_c += samples[i].close_price;
            sum_s += samples[i].start_price;
        }
        CHECK(rep.upper.mean_return == Approx(sum_c / sum_s).margin(1e-12));
    }
}

TEST_CASE("decile mean return equals the start-price weighted mean of H") {
    const auto m = synthetic_matrix();
    const auto t = bientropy::threshold_transform(m, 0.01);
    SamplingPlan plan;
    plan.count = 120;
    plan.seed = 11;
    plan.i_max = m.rows - plan.d_max;
    const auto samples = bientropy::sample_holdings(m, t, plan);

    double sum_c = 0, sum_s = 0, sum_sh = 0;
    for (const auto& s : samples) {
        sum_c += s.close_price;
        sum_s += s.start_price;
        sum_sh += s.start_price * s.holding_return;
    }
    CHECK(sum_c / sum_s == Approx(sum_sh / sum_s).margin(1e-9));
}

TEST_CASE("scaling a column leaves T, B and H unchanged") {
    auto m = synthetic_matrix();
    SamplingPlan plan;
    plan.count = 60;
    plan.seed = 19;
    plan.i_max = m.rows - plan.d_max;
    const auto t1 = bientropy::threshold_transform(m, 0.01);
    const auto before = bientropy::sample_holdings(m, t1, plan);

    for (std::size_t i = 0; i < m.rows; ++i) m.cells[i * m.cols + 1] *= 37.5;
    const auto t2 = bientropy::threshold_transform(m, 0.01);
    CHECK(t1.bits == t2.bits);
    const auto after = bientropy::sample_holdings(m, t2, plan);
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(before[i].bientropy == after[i].bientropy);
        CHECK(before[i].holding_return == Approx(after[i].holding_return).epsilon(1e-12));
    }
}

TEST_CASE("sampling plan validation") {
    const auto m = synthetic_matrix();
    const auto t = bientropy::threshold_transform(m, 0.01);
    SamplingPlan plan;
    plan.count = 50;
    plan.i_max = m.rows;  // i_max + d_max beyond the matrix
    CHECK_THROWS_AS(bientropy::sample_holdings(m, t, plan), std::invalid_argument);
    plan.i_max = m.rows - plan.d_max;
    plan.count = 5;  // too few
    CHECK_THROWS_AS(bientropy::sample_holdings(m, t, plan), std::invalid_argument);
    plan.count = 50;
    plan.fixed_d = 20;  // below the 32-row BiEntropy window
    CHECK_THROWS_AS(bientropy::sample_holdings(m, t, plan), std::invalid_argument);
}
