#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bientropy/bitstring.hpp"

namespace bientropy {

/// H(p) = -p log2 p - (1-p) log2 (1-p), with both boundary terms taken as 0.
inline double shannon_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("shannon_entropy: p outside [0,1]");
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

enum class Weighting { power_law, logarithmic, uniform, linear };

inline const char* to_string(Weighting w) {
    switch (w) {
        case Weighting::power_law: return "power_law";
        case Weighting::logarithmic: return "logarithmic";
        case Weighting::uniform: return "uniform";
        default: return "linear";
    }
}

/// Nominal weight of derivative k under a scheme. power_law overflows to inf
/// past k ~ 1023; scores are computed through a normalized accumulation that
/// does not evaluate 2^k directly, so the cap on bien() can be raised freely.
inline double scheme_weight(Weighting scheme, std::size_t k) {
    switch (scheme) {
        case Weighting::power_law: return std::exp2(double(k));
        case Weighting::logarithmic: return std::log2(double(k) + 2.0);
        case Weighting::uniform: return 1.0;
        default: return double(k) + 1.0;
    }
}

struct ProfileRow {
    std::size_t k;  // derivative index, k = 0 is the string itself
    double p;       // fraction of ones in d_k
    double h;       // Shannon entropy of p
    double weight;  // scheme weight for this row
};

struct EntropyProfile {
    std::vector<ProfileRow> rows;  // exactly n-1 rows
    double score = 0.0;            // weighted average of the h column
};

namespace detail {

/// H from the ones count. Both tail terms are fresh divisions of the two
/// counts, which makes H(ones, len) == H(len - ones, len) bit-exact, the
/// identity behind complement invariance.
inline double shannon_entropy_counts(std::size_t ones, std::size_t len) {
    if (ones == 0 || ones == len) return 0.0;
    const double p = double(ones) / double(len);
    const double q = double(len - ones) / double(len);
    return -p * std::log2(p) - q * std::log2(q);
}

/// Fills hs[k] = H(p(d_k)) for k = 0..n-2 (and ps[k] when given), running the
/// derivative chain in place on a scratch copy. O(n^2 / 64) word work.
inline void profile_entropies(const BitString& s, std::vector<double>& hs,
                              std::vector<double>* ps = nullptr) {
    const std::size_t n = s.size();
    if (n < 2) throw std::invalid_argument("entropy profile requires n >= 2");
    hs.clear();
    hs.reserve(n - 1);
    if (ps) {
        ps->clear();
        ps->reserve(n - 1);
    }
    BitString cur = s;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t len = n - k;
        const std::size_t ones = cur.count_ones();
        if (ps) ps->push_back(double(ones) / double(len));
        hs.push_back(shannon_entropy_counts(ones, len));
        cur.derive_in_place();
    }
}

/// Weighted average with power-law weights 2^k, accumulated from the top
/// derivative downward with a halving factor so no term overflows; weights
/// that underflow double precision contribute 0 harmlessly.
inline double power_law_score(const std::vector<double>& hs) {
    double num = 0.0, den = 0.0, f = 1.0;
    for (std::size_t k = hs.size(); k-- > 0;) {
        num += hs[k] * f;
        den += f;
        f *= 0.5;
    }
    return num / den;
}

inline double weighted_score(const std::vector<double>& hs, Weighting scheme) {
    if (scheme == Weighting::power_law) return power_law_score(hs);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < hs.size(); ++k) {
        const double w = scheme_weight(scheme, k);
        num += hs[k] * w;
        den += w;
    }
    return num / den;
}

}  // namespace detail

inline EntropyProfile entropy_profile(const BitString& s, Weighting scheme) {
    std::vector<double> hs, ps;
    detail::profile_entropies(s, hs, &ps);
    EntropyProfile prof;
    prof.rows.reserve(hs.size());
    for (std::size_t k = 0; k < hs.size(); ++k)
        prof.rows.push_back({k, ps[k], hs[k], scheme_weight(scheme, k)});
    prof.score = detail::weighted_score(hs, scheme);
    return prof;
}

/// Default length cap for the power-law variant; generous against the paper's
/// "n <= 32 approximately" guidance. Longer strings belong to tbien.
inline constexpr std::size_t kDefaultBienCap = 64;

/// Power-law BiEntropy. Defined for 2 <= n <= cap.
inline double bien(const BitString& s, std::size_t cap = kDefaultBienCap) {
    if (s.size() < 2) throw std::invalid_argument("bien requires n >= 2");
    if (s.size() > cap)
        throw std::invalid_argument("bien: n = " + std::to_string(s.size()) + " exceeds cap " +
                                    std::to_string(cap) + "; use tbien for long strings");
    std::vector<double> hs;
    detail::profile_entropies(s, hs);
    return detail::power_law_score(hs);
}

/// Logarithmic BiEntropy (Tres BiEn), the long-string variant. n >= 2.
inline double tbien(const BitString& s) {
    if (s.size() < 2) throw std::invalid_argument("tbien requires n >= 2");
    std::vector<double> hs;
    detail::profile_entropies(s, hs);
    return detail::weighted_score(hs, Weighting::logarithmic);
}

enum class Metric { bien, tbien };

inline const char* to_string(Metric m) { return m == Metric::bien ? "bien" : "tbien"; }

inline double score(const BitString& s, Metric m, std::size_t bien_cap = kDefaultBienCap) {
    return m == Metric::bien ? bien(s, bien_cap) : tbien(s);
}

}  // namespace bientropy
