#pragma once

#include <cstdint>

#include "segredefect/errors.hpp"

namespace segredefect {

// Element of GF(p) stored in 16 bits; all p < 2^16 keep (p-1)^2 inside
// the 64-bit arithmetic used below.
using FieldElem = std::uint16_t;

inline constexpr std::uint32_t kDefaultPrime = 127;
inline constexpr std::uint32_t kMaxPrime = 65521; // largest 16-bit prime

bool is_prime(std::uint32_t p);

// Throws Error unless 2 <= p <= kMaxPrime and p is prime.
void require_prime(std::uint32_t p);

FieldElem ff_normalize(std::int64_t x, std::uint32_t p);

inline FieldElem ff_add(FieldElem a, FieldElem b, std::uint32_t p) {
    std::uint32_t t = std::uint32_t(a) + b;
    return FieldElem(t >= p ? t - p : t);
}

inline FieldElem ff_sub(FieldElem a, FieldElem b, std::uint32_t p) {
    std::uint32_t t = std::uint32_t(a) + p - b;
    return FieldElem(t >= p ? t - p : t);
}

inline FieldElem ff_mul(FieldElem a, FieldElem b, std::uint32_t p) {
    return FieldElem((std::uint64_t(a) * b) % p);
}

FieldElem ff_pow(FieldElem a, std::uint64_t e, std::uint32_t p);

// Multiplicative inverse; throws ZeroInverse for a = 0.
FieldElem ff_inv(FieldElem a, std::uint32_t p);

} // namespace segredefect
