#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bientropy {

/// Packed finite bit string. Bit 0 is the first (leftmost) digit of the text
/// form; internally bits are stored LSB-first inside 64-bit words so that the
/// binary derivative is a word-wise shift-XOR.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t n) : words_((n + 63) / 64, 0), n_(n) {}

    /// Bits of `value` written MSB-first, so from_value(0b01, 2) renders as "01".
    static BitString from_value(std::uint64_t value, std::size_t n) {
        if (n == 0 || n > 64) throw std::invalid_argument("from_value: n must be in [1,64]");
        BitString s(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((value >> (n - 1 - i)) & 1u) s.set_bit(i, true);
        return s;
    }

    /// Parses '0'/'1' characters; whitespace is skipped, anything else rejected.
    static BitString parse(std::string_view text) {
        std::size_t n = 0;
        for (char c : text) {
            if (c == '0' || c == '1')
                ++n;
            else if (!is_space(c))
                throw std::invalid_argument(std::string("invalid character '") + c +
                                            "' in bit string");
        }
        if (n == 0) throw std::invalid_argument("empty bit string");
        BitString s(n);
        std::size_t i = 0;
        for (char c : text)
            if (c == '0' || c == '1') s.set_bit(i++, c == '1');
        return s;
    }

    std::string str() const {
        std::string out(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (bit(i)) out[i] = '1';
        return out;
    }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool bit(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set_bit(std::size_t i, bool v) {
        const std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }

    void push_back(bool v) {
        if (n_ % 64 == 0) words_.push_back(0);
        ++n_;
        set_bit(n_ - 1, v);
    }

    std::size_t count_ones() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += std::size_t(std::popcount(w));
        return c;
    }

    /// Fraction of 1-bits; the p(k) statistic when applied to a derivative.
    double ones_fraction() const {
        if (n_ == 0) throw std::invalid_argument("ones_fraction of empty string");
        return double(count_ones()) / double(n_);
    }

    /// First binary derivative: bit i of the result is s[i] XOR s[i+1].
    BitString derivative() const {
        if (n_ < 2) throw std::invalid_argument("derivative requires n >= 2");
        BitString d = *this;
        d.derive_in_place();
        return d;
    }

    /// All n-1 derivatives, d1 .. d_{n-1}, lengths n-1 down to 1.
    std::vector<BitString> derivatives() const {
        if (n_ < 2) throw std::invalid_argument("derivatives requires n >= 2");
        std::vector<BitString> out;
        out.reserve(n_ - 1);
        BitString cur = derivative();
        while (true) {
            out.push_back(cur);
            if (cur.size() == 1) break;
            cur.derive_in_place();
        }
        return out;
    }

    /// In-place derivative step; shrinks the string by one bit.
    void derive_in_place() {
        const std::size_t nw = words_.size();
        for (std::size_t i = 0; i < nw; ++i) {
            std::uint64_t shifted = words_[i] >> 1;
            if (i + 1 < nw) shifted |= words_[i + 1] << 63;
            words_[i] ^= shifted;
        }
        --n_;
        trim();
    }

    BitString subrange(std::size_t pos, std::size_t len) const {
        if (pos + len > n_) throw std::invalid_argument("subrange out of bounds");
        BitString out(len);
        const std::size_t shift = pos & 63;
        const std::size_t base = pos >> 6;
        for (std::size_t i = 0; i < out.words_.size(); ++i) {
            std::uint64_t w = words_[base + i] >> shift;
            if (shift && base + i + 1 < words_.size()) w |= words_[base + i + 1] << (64 - shift);
            out.words_[i] = w;
        }
        out.trim();
        return out;
    }

    BitString reversed() const {
        BitString out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            if (bit(i)) out.set_bit(n_ - 1 - i, true);
        return out;
    }

    /// Bitwise complement at the same length.
    BitString complemented() const {
        BitString out = *this;
        for (auto& w : out.words_) w = ~w;
        out.trim();
        return out;
    }

    BitString operator^(const BitString& o) const {
        if (n_ != o.n_) throw std::invalid_argument("xor of unequal lengths");
        BitString out = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= o.words_[i];
        return out;
    }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    // Clears bits beyond n_ so words stay canonical for == and popcount.
    void trim() {
        if (n_ % 64) words_[(n_ - 1) >> 6] &= (~std::uint64_t(0)) >> (64 - (n_ % 64));
        words_.resize((n_ + 63) / 64);
    }

    std::vector<std::uint64_t> words_;
    std::size_t n_ = 0;
};

enum class PeriodClass { periodic, nperiodic, aperiodic };

inline const char* to_string(PeriodClass c) {
    switch (c) {
        case PeriodClass::periodic: return "periodic";
        case PeriodClass::nperiodic: return "nperiodic";
        default: return "aperiodic";
    }
}

struct EventualPeriod {
    std::size_t period = 0;
    std::size_t offset = 0;  // number of leading digits skipped
};

struct PeriodicityReport {
    PeriodClass cls = PeriodClass::nperiodic;
    std::optional<std::size_t> period;
    std::optional<EventualPeriod> eventual_period;
    int last_derivative_bit = 0;
};

/// Least P with P | n, P <= n/2 and s[i+P] = s[i] for every position; the
/// divisor rule reproduces the exhaustive 4- and 8-bit class counts.
inline std::optional<std::size_t> find_period(const BitString& s) {
    const std::size_t n = s.size();
    if (n < 2) throw std::invalid_argument("find_period requires n >= 2");
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p) continue;
        if (s.subrange(0, n - p) == s.subrange(p, n - p)) return p;
    }
    return std::nullopt;
}

/// Least period P, then least offset k, such that the string repeats with
/// period P from position k+1 on. Periodic strings report (P, 0) directly;
/// otherwise a match must leave strictly more than two full periods after the
/// offset (k <= n - 2P - 1), which rules out vacuous short-suffix matches.
inline std::optional<EventualPeriod> find_eventual_period(const BitString& s) {
    const std::size_t n = s.size();
    if (n < 2) throw std::invalid_argument("find_eventual_period requires n >= 2");
    if (auto p = find_period(s)) return EventualPeriod{*p, 0};
    for (std::size_t p = 1; 2 * p + 1 <= n; ++p) {
        // least k: one past the last mismatch position (1-based prose, 0-based here)
        std::size_t k = 0;
        for (std::size_t i = n - p; i-- > 0;) {
            if (s.bit(i + p) != s.bit(i)) {
                k = i + 1;
                break;
            }
        }
        if (k + 2 * p + 1 <= n) return EventualPeriod{p, k};
    }
    return std::nullopt;
}

/// Derivative-driven classification: last derivative 1 => aperiodic; otherwise
/// periodic when an exact repetition period exists, else nperiodic.
inline PeriodicityReport classify(const BitString& s) {
    if (s.size() < 2) throw std::invalid_argument("classify requires n >= 2");
    BitString cur = s;
    while (cur.size() > 1) cur.derive_in_place();
    PeriodicityReport r;
    r.last_derivative_bit = cur.bit(0) ? 1 : 0;
    r.period = find_period(s);
    r.eventual_period = find_eventual_period(s);
    if (r.last_derivative_bit == 1)
        r.cls = PeriodClass::aperiodic;
    else if (r.period)
        r.cls = PeriodClass::periodic;
    else
        r.cls = PeriodClass::nperiodic;
    return r;
}

}  // namespace bientropy
