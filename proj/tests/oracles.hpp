// Independent reference computations for tests. These deliberately avoid the
// library's own shortcuts: distances come from element-by-element loops over
// every pair, and field products from polynomial arithmetic done the long
// way.
#pragma once

#include <cstdint>
#include <vector>

#include "cdd/gf.hpp"

namespace oracle {

// Polynomial multiplication over GF(2) followed by reduction, no tables.
inline uint8_t gf_mul_long_way(uint8_t a, uint8_t b, int bits, unsigned poly)
{
    unsigned prod = 0;
    for (int i = 0; i < 8; ++i)
        if (b & (1u << i)) prod ^= static_cast<unsigned>(a) << i;
    for (int deg = 14; deg >= bits; --deg)
        if (prod & (1u << deg)) prod ^= poly << (deg - bits);
    return static_cast<uint8_t>(prod);
}

inline int distance(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b)
{
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

// Minimum distance over all codeword pairs, no linearity assumption.
inline int pairwise_min_distance(const std::vector<cdd::GFVector>& words)
{
    int best = static_cast<int>(words.at(0).size()) + 1;
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            best = std::min(best, distance(words[i].values(), words[j].values()));
    return best;
}

} // namespace oracle
