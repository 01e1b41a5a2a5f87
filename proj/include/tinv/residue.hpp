#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>

namespace tinv {

// An integer modulo a nonnegative modulus; modulus 0 keeps the integer as is.
struct Residue {
    std::int64_t value = 0;
    std::int64_t modulus = 0;
    friend bool operator==(const Residue&, const Residue&) = default;
};

inline Residue make_residue(std::int64_t value, std::int64_t modulus) {
    if (modulus < 0) modulus = -modulus;
    if (modulus > 0) value = ((value % modulus) + modulus) % modulus;
    return Residue{value, modulus};
}

// gcd of absolute values; gcd of nothing (or of zeros) is 0.
template <class Range>
std::int64_t gcd_all(const Range& values) {
    std::int64_t g = 0;
    for (std::int64_t v : values) g = std::gcd(g, v < 0 ? -v : v);
    return g;
}

inline std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value << " mod " << r.modulus;
}

}  // namespace tinv
