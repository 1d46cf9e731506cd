#pragma once

#include <cstdint>
#include <stdexcept>

namespace gw {

using int128 = __int128;

// One Euler factor evaluated as an exact integer ratio, converted to binary
// floating point in a single division. Inputs stay well inside the int128
// range for p up to 10^9 (largest expressions are ~p^4).
inline double exact_ratio(int128 num, int128 den) {
    if (den == 0) throw std::invalid_argument("exact_ratio: zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
}

// 1 + (p-1)^{-3}
inline double cubic_factor(uint64_t p) {
    int128 q = static_cast<int128>(p) - 1;
    int128 q3 = q * q * q;
    return exact_ratio(q3 + 1, q3);
}

// 1 - (p-1)^{-2} = p(p-2) / (p-1)^2
inline double quad_deficit_factor(uint64_t p) {
    int128 q = static_cast<int128>(p) - 1;
    return exact_ratio(static_cast<int128>(p) * (static_cast<int128>(p) - 2), q * q);
}

// 1 + (p-1)^{-1} = p / (p-1)
inline double linear_excess_factor(uint64_t p) {
    return exact_ratio(static_cast<int128>(p), static_cast<int128>(p) - 1);
}

} // namespace gw
