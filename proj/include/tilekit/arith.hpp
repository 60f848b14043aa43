#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tilekit {

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1U);
    return factors;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
    return result;
}

inline int mobius(std::uint64_t n) {
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

/// Number of distinct prime divisors.
inline unsigned omega(std::uint64_t n) { return static_cast<unsigned>(factorize(n).size()); }

/// Number of divisors.
inline std::uint64_t tau(std::uint64_t n) {
    std::uint64_t count = 1;
    for (auto [p, e] : factorize(n)) count *= e + 1;
    return count;
}

/// All positive divisors of n in increasing order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::domain_error("divisors: n must be positive");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::uint64_t lcm_of(const std::vector<std::uint64_t>& values) {
    std::uint64_t acc = 1;
    for (auto v : values) acc = std::lcm(acc, v);
    return acc;
}

}  // namespace tilekit
