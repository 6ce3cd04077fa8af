#pragma once

// Exact rational arithmetic. All quantities in this library (probabilities,
// weights, utilities, regrets) are GMP rationals so that every comparison a
// check makes is exact. Text form is "a/b" (or "a" when the denominator is 1)
// with an optional leading minus sign; nothing else parses.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace regretlab {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Strict parse of a rational literal. Grammar: '-'? digits ('/' digits)?
// The denominator, when present, must be a nonzero unsigned digit string.
// Returns nullopt on any other input (floats, exponents, whitespace, signs
// in the denominator, empty strings).
inline std::optional<Rat> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[i] == '-') ++i;
    std::size_t num_begin = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == num_begin) return std::nullopt;
    std::string num = text.substr(0, i);
    std::string den = "1";
    if (i < text.size()) {
        if (text[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_begin = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == den_begin || i != text.size()) return std::nullopt;
        den = text.substr(den_begin);
        bool all_zero = true;
        for (char c : den)
            if (c != '0') all_zero = false;
        if (all_zero) return std::nullopt;
    }
    Rat q;
    if (q.set_str(num + "/" + den, 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rat& q) {
    return q.get_str();
}

inline Rat rat_abs(const Rat& q) {
    return q < 0 ? Rat(-q) : q;
}

inline Rat rat_max(const std::vector<Rat>& xs, const Rat& if_empty = Rat(0)) {
    if (xs.empty()) return if_empty;
    Rat best = xs.front();
    for (const Rat& x : xs)
        if (x > best) best = x;
    return best;
}

}  // namespace regretlab
