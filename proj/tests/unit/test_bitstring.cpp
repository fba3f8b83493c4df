#include <catch2/catch_amalgamated.hpp>

#include "bientropy/bitstring.hpp"
#include "bientropy/rng.hpp"
#include "support/oracle.hpp"

using bientropy::BitString;
using bientropy::PeriodClass;

namespace {

BitString random_bits(bientropy::Xoshiro256ss& rng, std::size_t n) {
    BitString s(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.next() & 1u) s.set_bit(i, true);
    return s;
}

}  // namespace

TEST_CASE("parse accepts digits and whitespace") {
    CHECK(BitString::parse("1011").str() == "1011");
    CHECK(BitString::parse("10 11").str() == "1011");
    CHECK(BitString::parse(" 1\t0\n1 1 ").size() == 4);
    CHECK_THROWS_AS(BitString::parse("10a1"), std::invalid_argument);
    CHECK_THROWS_AS(BitString::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(BitString::parse("  \n "), std::invalid_argument);
}

TEST_CASE("parse/render round-trips") {
    bientropy::Xoshiro256ss rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(200);
        const BitString s = random_bits(rng, n);
        CHECK(BitString::parse(s.str()) == s);
    }
}

TEST_CASE("derivative matches the worked rows") {
    CHECK(BitString::parse("1011").derivative().str() == "110");
    CHECK(BitString::parse("110").derivative().str() == "01");
    // printed one digit short in the source text; the defined length is n-1
    CHECK(BitString::parse("01010101").derivative().str() == "1111111");
    CHECK_THROWS_AS(BitString::parse("1").derivative(), std::invalid_argument);
}

TEST_CASE("derivatives chain") {
    const auto ds = BitString::parse("1011").derivatives();
    REQUIRE(ds.size() == 3);
    CHECK(ds[0].str() == "110");
    CHECK(ds[1].str() == "01");
    CHECK(ds[2].str() == "1");

    const auto single = BitString::parse("00").derivatives();
    REQUIRE(single.size() == 1);
    CHECK(single[0].str() == "0");

    const auto third = BitString::parse("00010001").derivatives();
    CHECK(third[2].str() == "11111");
}

TEST_CASE("derivative agrees with the digit-array oracle across word boundaries") {
    bientropy::Xoshiro256ss rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(300);
        const BitString s = random_bits(rng, n);
        auto expect = oracle::derivative(oracle::digits_from_text(s.str()));
        const BitString d = s.derivative();
        REQUIRE(d.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) CHECK(int(d.bit(i)) == expect[i]);
    }
}

TEST_CASE("derivative lengths and XOR linearity") {
    bientropy::Xoshiro256ss rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(130);
        const BitString a = random_bits(rng, n);
        const BitString b = random_bits(rng, n);
        const auto ds = a.derivatives();
        for (std::size_t k = 0; k < ds.size(); ++k) CHECK(ds[k].size() == n - 1 - k);
        CHECK((a ^ b).derivative() == (a.derivative() ^ b.derivative()));
    }
}

TEST_CASE("ones_fraction") {
    CHECK(BitString::parse("1011").ones_fraction() == 0.75);
    CHECK(BitString::parse("0000").ones_fraction() == 0.0);
    CHECK(BitString::parse("110").ones_fraction() == Catch::Approx(2.0 / 3.0));
}

TEST_CASE("find_period") {
    CHECK(bientropy::find_period(BitString::parse("01010101")) == 2);
    CHECK(bientropy::find_period(BitString::parse("00010001")) == 4);
    CHECK_FALSE(bientropy::find_period(BitString::parse("0011")).has_value());
    CHECK(bientropy::find_period(BitString::parse("00")) == 1);
}

TEST_CASE("find_eventual_period") {
    const auto ep = bientropy::find_eventual_period(BitString::parse("00011111"));
    REQUIRE(ep.has_value());
    CHECK(ep->period == 1);
    CHECK(ep->offset == 3);

    const auto periodic = bientropy::find_eventual_period(BitString::parse("01010101"));
    REQUIRE(periodic.has_value());
    CHECK(periodic->period == 2);
    CHECK(periodic->offset == 0);

    CHECK_FALSE(bientropy::find_eventual_period(BitString::parse("1011")).has_value());
}

TEST_CASE("periodic strings are eventually periodic at zero offset") {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
            const BitString s = BitString::from_value(v, n);
            if (auto p = bientropy::find_period(s)) {
                const auto ep = bientropy::find_eventual_period(s);
                REQUIRE(ep.has_value());
                CHECK(ep->period == *p);
                CHECK(ep->offset == 0);
            }
        }
    }
}

TEST_CASE("classify worked examples") {
    const auto periodic = bientropy::classify(BitString::parse("0101"));
    CHECK(periodic.cls == PeriodClass::periodic);
    CHECK(periodic.period == 2);
    CHECK(periodic.last_derivative_bit == 0);

    const auto nper = bientropy::classify(BitString::parse("0110"));
    CHECK(nper.cls == PeriodClass::nperiodic);
    CHECK_FALSE(nper.period.has_value());
    CHECK(nper.last_derivative_bit == 0);

    const auto aper = bientropy::classify(BitString::parse("0001"));
    CHECK(aper.cls == PeriodClass::aperiodic);
    CHECK(aper.last_derivative_bit == 1);
}

TEST_CASE("class is total and matches the last-derivative rule") {
    for (std::size_t n : {4u, 8u}) {
        std::size_t counts[3] = {0, 0, 0};
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
            const BitString s = BitString::from_value(v, n);
            const auto r = bientropy::classify(s);
            ++counts[std::size_t(r.cls)];
            CHECK(r.last_derivative_bit ==
                  oracle::last_derivative_bit(oracle::digits_from_value(v, n)));
            CHECK((r.cls == PeriodClass::aperiodic) == (r.last_derivative_bit == 1));
        }
        if (n == 4) {
            CHECK(counts[std::size_t(PeriodClass::periodic)] == 4);
            CHECK(counts[std::size_t(PeriodClass::nperiodic)] == 4);
            CHECK(counts[std::size_t(PeriodClass::aperiodic)] == 8);
        } else {
            CHECK(counts[std::size_t(PeriodClass::periodic)] == 16);
            CHECK(counts[std::size_t(PeriodClass::nperiodic)] == 112);
            CHECK(counts[std::size_t(PeriodClass::aperiodic)] == 128);
        }
    }
}

TEST_CASE("all-zeros strings of length 2^m have all-zero derivatives") {
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u, 128u}) {
        const BitString zeros(n);
        for (const auto& d : zeros.derivatives()) CHECK(d.count_ones() == 0);
    }
}

TEST_CASE("subrange, reverse and complement") {
    bientropy::Xoshiro256ss rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(200);
        const BitString s = random_bits(rng, n);
        const std::size_t pos = rng.below(n);
        const std::size_t len = 1 + rng.below(n - pos);
        CHECK(s.subrange(pos, len).str() == s.str().substr(pos, len));

        std::string rev(s.str().rbegin(), s.str().rend());
        CHECK(s.reversed().str() == rev);
        CHECK(s.complemented().count_ones() == n - s.count_ones());
        CHECK(s.complemented().complemented() == s);
    }
    CHECK_THROWS_AS(BitString::parse("101").subrange(1, 3), std::invalid_argument);
}
