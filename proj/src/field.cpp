#include "segredefect/field.hpp"

#include <string>

namespace segredefect {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void require_prime(std::uint32_t p) {
    if (p < 2 || p > kMaxPrime || !is_prime(p))
        throw Error("invalid prime " + std::to_string(p) +
                    " (need a prime in [2, " + std::to_string(kMaxPrime) + "])");
}

FieldElem ff_normalize(std::int64_t x, std::uint32_t p) {
    // Base-two reduction for Mersenne primes, plain remainder otherwise.
    if ((p & (p + 1)) == 0 && x >= 0) {
        int e = 0;
        while ((std::uint32_t(1) << (e + 1)) - 1 != p && e < 16) ++e;
        if ((std::uint32_t(1) << (e + 1)) - 1 == p) {
            std::uint64_t a = std::uint64_t(x);
            while (a > p)
                a = (a & p) + (a >> (e + 1));
            if (a == p) a = 0;
            return FieldElem(a);
        }
    }
    std::int64_t r = x % std::int64_t(p);
    if (r < 0) r += p;
    return FieldElem(r);
}

FieldElem ff_pow(FieldElem a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t base = a % p, acc = 1 % p;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return FieldElem(acc);
}

FieldElem ff_inv(FieldElem a, std::uint32_t p) {
    if (a % p == 0) throw ZeroInverse("no inverse of 0 mod " + std::to_string(p));
    return ff_pow(a, p - 2, p);
}

} // namespace segredefect
