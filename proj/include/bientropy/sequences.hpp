#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "bientropy/bitstring.hpp"
#include "bientropy/entropy.hpp"
#include "bientropy/errors.hpp"
#include "bientropy/stats.hpp"

namespace bientropy {

/// Sieve of Eratosthenes; is_prime[i] for 0 <= i <= limit.
inline std::vector<bool> sieve_primes(std::size_t limit) {
    std::vector<bool> is_prime(limit + 1, true);
    is_prime[0] = false;
    if (limit >= 1) is_prime[1] = false;
    for (std::size_t i = 2; i * i <= limit; ++i)
        if (is_prime[i])
            for (std::size_t j = i * i; j <= limit; j += i) is_prime[j] = false;
    return is_prime;
}

/// Binary encoded primes: bit i covers the natural number i+1 (so the string
/// starts at 2), 1 for prime, 0 for composite.
inline BitString bep(std::size_t n) {
    if (n < 1) throw std::invalid_argument("bep requires n >= 1");
    const auto is_prime = sieve_primes(n + 1);
    BitString s(n);
    for (std::size_t i = 1; i <= n; ++i)
        if (is_prime[i + 1]) s.set_bit(i - 1, true);
    return s;
}

/// Prime encoded non-negative integers: bit j covers the integer j-1 (so the
/// string starts at 0), 1 for prime, 0 otherwise.
inline BitString penni(std::size_t n) {
    if (n < 1) throw std::invalid_argument("penni requires n >= 1");
    const auto is_prime = sieve_primes(n);
    BitString s(n);
    for (std::size_t j = 1; j <= n; ++j)
        if (is_prime[j - 1]) s.set_bit(j - 1, true);
    return s;
}

enum class PrimeEncoding { bep, penni };

inline const char* to_string(PrimeEncoding e) { return e == PrimeEncoding::bep ? "bep" : "penni"; }

inline BitString prime_encoding(PrimeEncoding e, std::size_t n) {
    return e == PrimeEncoding::bep ? bep(n) : penni(n);
}

struct CurvePoint {
    std::size_t n = 0;
    double score = 0.0;
};

/// Score of every prefix length 2..max_n of the chosen prime encoding.
inline std::vector<CurvePoint> prefix_curve(PrimeEncoding enc, std::size_t max_n, Metric metric,
                                            std::size_t bien_cap = kDefaultBienCap) {
    if (max_n < 2) throw std::invalid_argument("prefix_curve requires max_n >= 2");
    if (metric == Metric::bien && max_n > bien_cap)
        throw std::invalid_argument("prefix_curve: bien requested above its cap; use tbien");
    const BitString full = prime_encoding(enc, max_n);
    std::vector<CurvePoint> out;
    out.reserve(max_n - 1);
    for (std::size_t n = 2; n <= max_n; ++n)
        out.push_back({n, score(full.subrange(0, n), metric, bien_cap)});
    return out;
}

struct PeriodicityViolation {
    std::size_t n = 0;
    std::size_t period = 0;
};

/// Checks classify(prefix) != periodic for every even prefix length in
/// [4, max_even_n]. Violations are returned as data; an empty list means the
/// encoding shows no periodic prefix, the conclusion of the paper's corollaries.
inline std::vector<PeriodicityViolation> check_nonperiodicity(PrimeEncoding enc,
                                                              std::size_t max_even_n) {
    if (max_even_n < 4 || max_even_n % 2 != 0)
        throw std::invalid_argument("check_nonperiodicity requires even max_even_n >= 4");
    const BitString full = prime_encoding(enc, max_even_n);
    std::vector<PeriodicityViolation> violations;
    for (std::size_t n = 4; n <= max_even_n; n += 2) {
        const auto report = classify(full.subrange(0, n));
        if (report.cls == PeriodClass::periodic)
            violations.push_back({n, report.period.value_or(0)});
    }
    return violations;
}

struct DigitStream {
    std::vector<std::uint8_t> digits;  // each in 0..9
    std::string source_label;
};

/// First `count` decimal digits of the Champernowne constant's fractional
/// part, 0.123456789101112... (integer part excluded).
inline DigitStream champernowne(std::size_t count) {
    if (count < 1) throw std::invalid_argument("champernowne requires count >= 1");
    DigitStream out;
    out.digits.reserve(count);
    out.source_label = "champernowne";
    for (std::uint64_t k = 1; out.digits.size() < count; ++k) {
        char buf[24];
        int len = std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(k));
        for (int i = 0; i < len && out.digits.size() < count; ++i)
            out.digits.push_back(std::uint8_t(buf[i] - '0'));
    }
    return out;
}

/// Digit-file ingestion: keeps 0-9, skips every other character (decimal
/// points, whitespace, line breaks), the common million-digit file format.
inline DigitStream parse_digit_text(std::string_view text, std::string label) {
    DigitStream out;
    out.source_label = std::move(label);
    for (char c : text)
        if (c >= '0' && c <= '9') out.digits.push_back(std::uint8_t(c - '0'));
    if (out.digits.empty()) throw DataError("digit input contains no decimal digits");
    return out;
}

/// One bit per digit: 0-4 -> 0, 5-9 -> 1.
inline BitString encode_half(const DigitStream& d) {
    if (d.digits.empty()) throw std::invalid_argument("encode_half: empty digit stream");
    BitString s(d.digits.size());
    for (std::size_t i = 0; i < d.digits.size(); ++i)
        if (d.digits[i] >= 5) s.set_bit(i, true);
    return s;
}

/// Digits 0-7 emit their 3-bit binary form MSB first; 8 emits 0, 9 emits 1.
inline BitString encode_octal(const DigitStream& d) {
    if (d.digits.empty()) throw std::invalid_argument("encode_octal: empty digit stream");
    BitString s;
    for (std::uint8_t digit : d.digits) {
        if (digit == 8) {
            s.push_back(false);
        } else if (digit == 9) {
            s.push_back(true);
        } else {
            s.push_back((digit >> 2) & 1);
            s.push_back((digit >> 1) & 1);
            s.push_back(digit & 1);
        }
    }
    return s;
}

struct SectionReport {
    std::size_t section_bits = 0;
    Metric metric = Metric::bien;
    std::vector<double> scores;        // one per section, in input order
    SampleStats stats;                 // sample stdev over the scores
    std::vector<double> running_mean;  // running_mean[i] = mean(scores[0..i])
};

/// Scores `count` consecutive non-overlapping sections starting at the first
/// bit, with running prefix means for convergence plots.
inline SectionReport sectioned_analysis(const BitString& bits, std::size_t section_bits,
                                        std::size_t count, Metric metric,
                                        std::size_t bien_cap = kDefaultBienCap) {
    if (section_bits < 2) throw std::invalid_argument("sectioned_analysis: section_bits >= 2");
    if (metric == Metric::bien && section_bits > bien_cap)
        throw std::invalid_argument("sectioned_analysis: bien section above cap; use tbien");
    if (bits.size() < section_bits * count)
        throw std::invalid_argument("sectioned_analysis: input holds fewer than count sections");
    SectionReport rep;
    rep.section_bits = section_bits;
    rep.metric = metric;
    rep.scores.reserve(count);
    rep.running_mean.reserve(count);
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double v = score(bits.subrange(i * section_bits, section_bits), metric, bien_cap);
        rep.scores.push_back(v);
        sum += v;
        rep.running_mean.push_back(sum / double(i + 1));
    }
    rep.stats = summarize(rep.scores);
    return rep;
}

}  // namespace bientropy
