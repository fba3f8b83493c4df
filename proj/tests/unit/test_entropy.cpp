#include <catch2/catch_amalgamated.hpp>

#include "bientropy/entropy.hpp"
#include "bientropy/rng.hpp"
#include "support/oracle.hpp"

using bientropy::BitString;
using bientropy::Weighting;
using Catch::Approx;

TEST_CASE("shannon_entropy") {
    CHECK(bientropy::shannon_entropy(0.5) == 1.0);
    CHECK(bientropy::shannon_entropy(0.0) == 0.0);
    CHECK(bientropy::shannon_entropy(1.0) == 0.0);
    CHECK(bientropy::shannon_entropy(0.75) == Approx(0.811278124459).epsilon(1e-10));
    CHECK_THROWS_AS(bientropy::shannon_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(bientropy::shannon_entropy(1.1), std::invalid_argument);
}

TEST_CASE("scheme weights") {
    CHECK(bientropy::scheme_weight(Weighting::power_law, 0) == 1.0);
    CHECK(bientropy::scheme_weight(Weighting::power_law, 5) == 32.0);
    CHECK(bientropy::scheme_weight(Weighting::logarithmic, 0) == 1.0);
    CHECK(bientropy::scheme_weight(Weighting::logarithmic, 2) == 2.0);
    CHECK(bientropy::scheme_weight(Weighting::uniform, 9) == 1.0);
    CHECK(bientropy::scheme_weight(Weighting::linear, 3) == 4.0);
    for (std::size_t k = 0; k < 20; ++k) {
        CHECK(bientropy::scheme_weight(Weighting::power_law, k) > 0.0);
        CHECK(bientropy::scheme_weight(Weighting::logarithmic, k) > 0.0);
        CHECK(bientropy::scheme_weight(Weighting::uniform, k) > 0.0);
        CHECK(bientropy::scheme_weight(Weighting::linear, k) > 0.0);
    }
}

TEST_CASE("entropy_profile reproduces the worked 4-bit tables") {
    // power-law sheet for 1011
    const auto power = bientropy::entropy_profile(BitString::parse("1011"), Weighting::power_law);
    REQUIRE(power.rows.size() == 3);
    CHECK(power.rows[0].p == Approx(0.75));
    CHECK(power.rows[0].h == Approx(0.81).margin(0.005));
    CHECK(power.rows[1].h == Approx(0.92).margin(0.005));
    CHECK(power.rows[2].h == Approx(1.00).margin(0.005));
    CHECK(power.rows[0].weight == 1.0);
    CHECK(power.rows[1].weight == 2.0);
    CHECK(power.rows[2].weight == 4.0);
    CHECK(power.score == Approx(0.95).margin(0.005));

    // logarithmic sheet for 1001
    const auto log = bientropy::entropy_profile(BitString::parse("1001"), Weighting::logarithmic);
    REQUIRE(log.rows.size() == 3);
    CHECK(log.rows[0].h == Approx(1.00).margin(0.005));
    CHECK(log.rows[1].h == Approx(0.92).margin(0.005));
    CHECK(log.rows[2].h == Approx(0.00).margin(0.005));
    CHECK(log.rows[0].weight == Approx(1.00).margin(0.005));
    CHECK(log.rows[1].weight == Approx(1.58).margin(0.005));
    CHECK(log.rows[2].weight == Approx(2.00).margin(0.005));
    CHECK(log.score == Approx(0.54).margin(0.005));

    const auto two = bientropy::entropy_profile(BitString::parse("11"), Weighting::power_law);
    REQUIRE(two.rows.size() == 1);
    CHECK(two.score == 0.0);
}

TEST_CASE("profile score equals the weighted average definition") {
    bientropy::Xoshiro256ss rng(23);
    for (Weighting w : {Weighting::power_law, Weighting::logarithmic, Weighting::uniform,
                        Weighting::linear}) {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 2 + rng.below(40);
            BitString s(n);
            for (std::size_t i = 0; i < n; ++i)
                if (rng.next() & 1u) s.set_bit(i, true);
            const auto prof = bientropy::entropy_profile(s, w);
            REQUIRE(prof.rows.size() == n - 1);
            double num = 0.0, den = 0.0;
            for (const auto& r : prof.rows) {
                num += r.h * r.weight;
                den += r.weight;
            }
            CHECK(prof.score == Approx(num / den).margin(1e-12));
        }
    }
}

TEST_CASE("bien worked values") {
    CHECK(bientropy::bien(BitString::parse("01")) == 1.0);
    CHECK(bientropy::bien(BitString::parse("0101")) == Approx(1.0 / 7.0).epsilon(1e-12));
    CHECK(bientropy::bien(BitString::parse("1011")) == Approx(0.9497).margin(5e-5));
    CHECK_THROWS_AS(bientropy::bien(BitString::parse("1")), std::invalid_argument);
    CHECK_THROWS_AS(bientropy::bien(BitString(65)), std::invalid_argument);
    CHECK_NOTHROW(bientropy::bien(BitString(65), 128));  // raised cap
}

TEST_CASE("tbien worked values") {
    CHECK(bientropy::tbien(BitString::parse("1001")) == Approx(0.54).margin(0.005));
    CHECK(bientropy::tbien(BitString::parse("0000")) == 0.0);
    const double v = bientropy::tbien(BitString::parse("01101011"));
    CHECK(v > 0.9);
    CHECK(v < 1.0);
    CHECK(v == Approx(oracle::tbien(oracle::digits_from_text("01101011"))).margin(1e-12));
}

TEST_CASE("constant strings score exactly zero at every length") {
    for (std::size_t n = 2; n <= 64; ++n) {
        const BitString zeros(n);
        CHECK(bientropy::bien(zeros) == 0.0);
        CHECK(bientropy::tbien(zeros) == 0.0);
        CHECK(bientropy::bien(zeros.complemented()) == 0.0);
        CHECK(bientropy::tbien(zeros.complemented()) == 0.0);
    }
    // tbien has no upper length cap
    CHECK(bientropy::tbien(BitString(4096)) == 0.0);
}

TEST_CASE("packed kernel matches the digit-array oracle exhaustively") {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
            const BitString s = BitString::from_value(v, n);
            const auto digits = oracle::digits_from_value(v, n);
            CHECK(bientropy::bien(s) == Approx(oracle::bien(digits)).margin(1e-12));
            CHECK(bientropy::tbien(s) == Approx(oracle::tbien(digits)).margin(1e-12));
        }
    }
}

TEST_CASE("complement and reversal invariance, scores below one") {
    bientropy::Xoshiro256ss rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng.below(63);
        BitString s(n);
        for (std::size_t i = 0; i < n; ++i)
            if (rng.next() & 1u) s.set_bit(i, true);
        const double b = bientropy::bien(s);
        const double t = bientropy::tbien(s);
        CHECK(b == bientropy::bien(s.complemented()));
        CHECK(t == bientropy::tbien(s.complemented()));
        CHECK(b == Approx(bientropy::bien(s.reversed())).margin(1e-12));
        CHECK(t == Approx(bientropy::tbien(s.reversed())).margin(1e-12));
        if (n >= 3) {
            CHECK(b < 1.0);
            CHECK(t < 1.0);
        }
    }
}

TEST_CASE("power-law score at n=2 is the plain Shannon entropy") {
    for (std::uint64_t v = 0; v < 4; ++v) {
        const BitString s = BitString::from_value(v, 2);
        CHECK(bientropy::bien(s) == bientropy::shannon_entropy(s.ones_fraction()));
    }
}
