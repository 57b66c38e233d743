#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>

namespace gcx {

// Exact rational scalar. All algebraic paths use this type; no floating
// point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
std::optional<Rat> parse_rat(const std::string& s);

std::string rat_to_string(const Rat& q);

inline int parity_sign(long num_transpositions) {
    return (num_transpositions % 2 == 0) ? 1 : -1;
}

// Sign of the permutation p (a bijection {0..n-1} -> {0..n-1}).
template <typename Vec>
int permutation_sign(const Vec& p) {
    int sign = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

}  // namespace gcx
