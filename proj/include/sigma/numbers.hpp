#pragma once

#include <cstdint>
#include <vector>

namespace sigma {

// prime factorisation by trial division; inputs here never exceed a group
// order (a few thousand)
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    std::vector<std::pair<int64_t, int>> f;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline std::vector<int64_t> prime_divisors(int64_t n) {
    std::vector<int64_t> ps;
    for (auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

// largest divisor of n supported on the given primes
inline int64_t part_of(int64_t n, const std::vector<int64_t>& primes) {
    int64_t part = 1;
    for (int64_t p : primes) {
        while (n % p == 0) {
            n /= p;
            part *= p;
        }
    }
    return part;
}

inline int64_t p_part(int64_t n, int64_t p) {
    int64_t part = 1;
    while (n % p == 0) {
        n /= p;
        part *= p;
    }
    return part;
}

} // namespace sigma
