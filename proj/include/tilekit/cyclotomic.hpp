#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "tilekit/arith.hpp"
#include "tilekit/polynomial.hpp"

namespace tilekit {

namespace detail {

inline std::uint64_t radical(std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto [p, e] : factorize(n)) r *= p;
    return r;
}

/// f(x^k)
inline Polynomial compose_power(const Polynomial& f, std::size_t k) {
    if (k == 1 || f.is_zero()) return f;
    auto c = f.coefficients();
    std::vector<BigInt> out((c.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c.size(); ++i) out[i * k] = c[i];
    return Polynomial(std::move(out));
}

class CyclotomicCache {
public:
    static CyclotomicCache& instance() {
        static CyclotomicCache cache;
        return cache;
    }

    const Polynomial& get(std::uint64_t n) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = table_.find(n); it != table_.end()) return it->second;
        }
        Polynomial value = compute(n);
        std::lock_guard lock(mutex_);
        // Concurrent computations of the same index produce equal values.
        return table_.try_emplace(n, std::move(value)).first->second;
    }

private:
    Polynomial compute(std::uint64_t n) {
        if (n == 1) return Polynomial{-1, 1};
        const std::uint64_t rad = radical(n);
        if (rad != n) return compose_power(get(rad), n / rad);
        Polynomial acc = Polynomial::x_pow_minus_one(n);
        for (std::uint64_t d : divisors(n)) {
            if (d == n) break;
            acc = exact_div(acc, get(d));
        }
        return acc;
    }

    std::mutex mutex_;
    std::map<std::uint64_t, Polynomial> table_;  // node-based: references stay valid
};

// Mersenne prime used for the modular pre-check in cyclotomic_part.
inline constexpr std::uint64_t kCheckPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kCheckPrime);
}

/// True when f mod g vanishes over F_p for the check prime (g monic).
inline bool divides_mod_prime(const Polynomial& g, const Polynomial& f) {
    auto gc = g.coefficients();
    auto fc = f.coefficients();
    const std::size_t dg = gc.size() - 1;
    std::vector<std::uint64_t> gm(gc.size());
    for (std::size_t i = 0; i < gc.size(); ++i) gm[i] = residue(gc[i], kCheckPrime);
    std::vector<std::uint64_t> r(fc.size());
    for (std::size_t i = 0; i < fc.size(); ++i) r[i] = residue(fc[i], kCheckPrime);
    for (std::size_t i = r.size(); i-- > dg;) {
        const std::uint64_t q = r[i];
        if (q == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) {
            std::uint64_t sub = mulmod(q, gm[j]);
            std::uint64_t& slot = r[i - dg + j];
            slot = slot >= sub ? slot - sub : slot + kCheckPrime - sub;
        }
    }
    for (std::size_t i = 0; i < std::min(dg, r.size()); ++i)
        if (r[i] != 0) return false;
    return true;
}

}  // namespace detail

/// The n-th cyclotomic polynomial. Computed by exact division of x^n - 1 by the
/// lower-index factors (squarefree n) or as Phi_rad(n)(x^(n/rad(n))), and memoized
/// in a process-wide thread-safe table.
inline const Polynomial& cyclotomic(std::uint64_t n) {
    if (n == 0) throw std::domain_error("cyclotomic: index must be positive");
    return detail::CyclotomicCache::instance().get(n);
}

/// Largest V such that Phi_d^V divides f.
inline unsigned cyclotomic_multiplicity(Polynomial f, std::uint64_t d) {
    if (f.is_zero()) throw std::domain_error("cyclotomic_multiplicity: zero polynomial");
    const Polynomial& phi = cyclotomic(d);
    unsigned v = 0;
    while (auto q = try_exact_div(f, phi)) {
        f = std::move(*q);
        ++v;
    }
    return v;
}

struct CyclotomicFactorization {
    BigInt content;                              // sign chosen so the cofactor has positive leading coefficient
    std::map<std::uint64_t, unsigned> multiplicities;  // d -> V_d >= 1
    Polynomial cofactor;                         // primitive, free of Phi_d for every searched d

    Polynomial reassemble() const {
        Polynomial acc = Polynomial::constant(content) * cofactor;
        for (auto [d, v] : multiplicities)
            for (unsigned i = 0; i < v; ++i) acc = acc * cyclotomic(d);
        return acc;
    }

    std::vector<std::uint64_t> indices() const {
        std::vector<std::uint64_t> out;
        for (auto [d, v] : multiplicities) out.push_back(d);
        return out;
    }
};

/// Splits f into content * prod Phi_d^V_d * cofactor.
///
/// Candidates are all d with phi(d) <= deg of the remaining cofactor. Since
/// phi(d) >= sqrt(d/2), every such d is at most 2*deg^2; max_index, when nonzero,
/// lowers that search bound further. Each candidate is screened modulo a 61-bit
/// prime before the exact division, so the cost is dominated by the screens.
inline CyclotomicFactorization cyclotomic_part(const Polynomial& f, std::uint64_t max_index = 0) {
    if (f.is_zero()) throw std::domain_error("cyclotomic_part: zero polynomial");
    CyclotomicFactorization out;
    out.content = content(f);
    if (f.leading() < 0) out.content = -out.content;
    Polynomial rest = f;
    rest.divide_exact(out.content);

    auto search_bound = [&](long degree) -> std::uint64_t {
        if (degree < 1) return 0;
        auto bound = 2 * static_cast<std::uint64_t>(degree) * static_cast<std::uint64_t>(degree);
        return max_index != 0 ? std::min(bound, max_index) : bound;
    };

    std::uint64_t bound = search_bound(rest.degree());
    if (bound > (std::uint64_t{1} << 27))
        throw std::domain_error("cyclotomic_part: degree too large for the candidate sieve");

    // Euler phi sieve over the candidate range.
    std::vector<std::uint32_t> phi(bound + 1);
    for (std::uint64_t i = 0; i <= bound; ++i) phi[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (phi[p] != p) continue;
        for (std::uint64_t m = p; m <= bound; m += p) phi[m] -= phi[m] / static_cast<std::uint32_t>(p);
    }

    for (std::uint64_t d = 1; d <= bound; ++d) {
        if (rest.degree() < 1) break;
        if (phi[d] > static_cast<std::uint64_t>(rest.degree())) continue;
        const Polynomial& cyc = cyclotomic(d);
        if (!detail::divides_mod_prime(cyc, rest)) continue;
        unsigned v = 0;
        while (auto q = try_exact_div(rest, cyc)) {
            rest = std::move(*q);
            ++v;
        }
        if (v > 0) {
            out.multiplicities[d] = v;
            bound = std::min(bound, search_bound(rest.degree()));
        }
    }
    out.cofactor = std::move(rest);
    return out;
}

/// prod over primitive d1-th roots of unity xi of f(xi), as the resultant of
/// Phi_d1 and f (Phi_d1 is monic, so no leading-coefficient factor appears).
inline BigInt conjugate_product(const Polynomial& f, std::uint64_t d1) {
    if (f.is_zero()) throw std::domain_error("conjugate_product: zero polynomial");
    return resultant(cyclotomic(d1), f);
}

}  // namespace tilekit
