#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "tilekit/arith.hpp"
#include "tilekit/cyclotomic.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/multiset.hpp"
#include "tilekit/polynomial.hpp"

namespace tilekit {

/// d consecutive weights of B, oldest first. For the forward step the window is
/// (w_B(n-d), ..., w_B(n-1)); for the backward step it is (w_B(n-d+1), ..., w_B(n)).
using WindowState = std::vector<std::uint64_t>;

enum class SearchStatus { ok, inconclusive_budget };

inline const char* to_string(SearchStatus s) { return s == SearchStatus::ok ? "ok" : "inconclusive-budget"; }

struct TilingOptions {
    double epsilon = 0.5;
    std::uint64_t budget = 1'000'000;  // cap on distinct window states visited
    bool algebraic_route = true;
};

struct TilingReport {
    SearchStatus status = SearchStatus::ok;
    bool exists = false;
    std::optional<PeriodicWeightSequence> witness;
    std::optional<std::uint64_t> minimal_period_combinatorial;
    std::optional<std::uint64_t> minimal_period_algebraic;
    std::optional<std::vector<std::uint64_t>> cyclotomic_indices;
    bool agreement = false;
    BigInt newman_bound;
    double biro_bound_log = 0.0;
    double epsilon = 0.5;
    std::uint64_t diam = 0;
    std::uint64_t t = 0;
    std::int64_t shift = 0;
    std::uint64_t cycle_count = 0;
    std::uint64_t states_visited = 0;
};

namespace detail {

inline void require_window(const WindowState& state, const IntegerMultiset& a, std::uint64_t t) {
    if (a.empty() || a.min() != 0) throw std::domain_error("window step: multiset must be normalized");
    if (t == 0) throw std::domain_error("window step: t must be positive");
    if (state.size() != diam(a) || state.empty())
        throw std::domain_error("window step: state length " + std::to_string(state.size()) + " does not match diam " +
                                std::to_string(diam(a)));
}

// Solves lead * w = t - sum for w; nullopt when no nonnegative integer solution exists.
inline std::optional<std::uint64_t> solve_step(unsigned __int128 sum, std::uint64_t lead, std::uint64_t t) {
    if (sum > t) return std::nullopt;
    const auto rest = static_cast<std::uint64_t>(t - sum);
    if (rest % lead != 0) return std::nullopt;
    return rest / lead;
}

}  // namespace detail

/// Next weight w_B(n) from the window (w_B(n-d), ..., w_B(n-1)), or nullopt
/// when R_{A,B}(n) = t has no admissible solution.
inline std::optional<std::uint64_t> step_forward(const WindowState& state, const IntegerMultiset& a, std::uint64_t t) {
    detail::require_window(state, a, t);
    const std::size_t d = state.size();
    unsigned __int128 sum = 0;
    for (auto [point, w] : a.weights()) {
        if (point == 0) continue;
        sum += static_cast<unsigned __int128>(w) * state[d - static_cast<std::size_t>(point)];
    }
    return detail::solve_step(sum, a.weight(0), t);
}

/// Previous weight w_B(n-d) from the window (w_B(n-d+1), ..., w_B(n)).
inline std::optional<std::uint64_t> step_backward(const WindowState& state, const IntegerMultiset& a, std::uint64_t t) {
    detail::require_window(state, a, t);
    const std::size_t d = state.size();
    unsigned __int128 sum = 0;
    for (auto [point, w] : a.weights()) {
        if (static_cast<std::size_t>(point) == d) continue;
        sum += static_cast<unsigned __int128>(w) * state[d - 1 - static_cast<std::size_t>(point)];
    }
    return detail::solve_step(sum, a.weight(static_cast<std::int64_t>(d)), t);
}

/// Smallest p dividing |block| such that block is invariant under rotation by p.
inline std::uint64_t minimal_period(const std::vector<std::uint64_t>& block) {
    if (block.empty()) throw std::domain_error("minimal_period: empty block");
    const std::size_t n = block.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = block[i] == block[(i + p) % n];
        if (ok) return p;
    }
    return n;
}

/// Every weight of B is at most t.
inline bool weight_cap_check(const IntegerMultiset& /*a*/, std::uint64_t t, const PeriodicWeightSequence& b) {
    auto capped = [t](std::uint64_t w) { return w <= t; };
    return std::all_of(b.preperiod().begin(), b.preperiod().end(), capped) &&
           std::all_of(b.period().begin(), b.period().end(), capped);
}

/// (t+1)^diam(A)
inline BigInt newman_bound(const IntegerMultiset& a, std::uint64_t t) { return ipow(BigInt(t) + 1, diam(a)); }

/// (diam(A)+1)^(1/3+epsilon), the bound on log k.
inline double biro_bound_log(const IntegerMultiset& a, double epsilon) {
    if (!(epsilon > 0)) throw std::domain_error("epsilon must be positive");
    return std::pow(static_cast<double>(diam(a)) + 1.0, 1.0 / 3.0 + epsilon);
}

/// Generating function of B^+ (the part of B on n >= 0) as a reduced fraction
/// p/q: gcd(p, q) = 1, q primitive with positive constant term.
inline std::pair<Polynomial, Polynomial> gamma_rational_form(const PeriodicWeightSequence& b) {
    const std::size_t k = b.period().size();
    Polynomial numerator;
    if (b.two_sided()) {
        std::vector<BigInt> block(k);
        for (std::size_t j = 0; j < k; ++j) block[j] = b.at(static_cast<std::int64_t>(j));
        numerator = Polynomial(std::move(block));
    } else {
        if (b.offset() < 0) throw std::domain_error("gamma_rational_form: one-sided sequence must start at n >= 0");
        const auto off = static_cast<std::size_t>(b.offset());
        std::vector<BigInt> pre(b.preperiod().begin(), b.preperiod().end());
        std::vector<BigInt> per(b.period().begin(), b.period().end());
        const Polynomial head = Polynomial(std::move(pre)).shifted(off);
        // pre(x) (1 - x^k) + x^start per(x), all over 1 - x^k
        numerator = head - head.shifted(k) + Polynomial(std::move(per)).shifted(static_cast<std::size_t>(b.period_start()));
    }
    Polynomial denominator = Polynomial::monomial(-1, k) + Polynomial::constant(1);  // 1 - x^k

    Polynomial g = gcd(numerator, denominator);
    Polynomial p = exact_div(numerator, g);
    Polynomial q = exact_div(denominator, g);
    if (q[0] < 0) {
        p = -p;
        q = -q;
    }
    return {std::move(p), std::move(q)};
}

struct AlgebraicPeriod {
    std::uint64_t k = 1;
    std::vector<std::uint64_t> indices;  // D, the cyclotomic indices of q
    Polynomial numerator;
    Polynomial denominator;
};

/// Eventual period of B read off the reduced denominator q of its generating
/// function: q = l' * prod_{d in D} Phi_d and k = lcm(D).
///
/// Checks on the way: R_{A,B^+}(n) = t from n = diam(A) through a full period,
/// q divides (x - 1) lambda(x), and q is a constant times a product of distinct
/// cyclotomic polynomials. Any failure raises integrity_error.
inline AlgebraicPeriod algebraic_minimal_period(const IntegerMultiset& a, std::uint64_t t,
                                                const PeriodicWeightSequence& b) {
    auto [an, shift] = normalize(a);
    const auto d = static_cast<std::int64_t>(diam(an));
    const auto k = static_cast<std::int64_t>(b.period().size());

    // B^+ view: the same weights on n >= 0, nothing below.
    auto plus_weight = [&](std::int64_t n) -> std::uint64_t { return n < 0 ? 0 : b.at(n); };
    const std::int64_t last = std::max<std::int64_t>(d, b.period_start()) + k + d;
    for (std::int64_t n = d; n < last; ++n) {
        BigInt r = 0;
        for (auto [point, w] : an.weights()) r += BigInt(w) * plus_weight(n - point);
        if (r != t)
            throw integrity_error("R_{A,B+}(" + std::to_string(n) + ") = " + r.str() + " differs from t = " +
                                  std::to_string(t));
    }

    auto [p, q] = gamma_rational_form(b);
    const Polynomial bound_multiple = Polynomial{-1, 1} * mask_polynomial(an);
    if (!try_exact_div(bound_multiple, q))
        throw integrity_error("reduced denominator " + q.to_string() + " does not divide (x - 1) * lambda(x)");

    CyclotomicFactorization fac = cyclotomic_part(q);
    if (fac.cofactor.degree() != 0)
        throw integrity_error("reduced denominator has non-cyclotomic factor " + fac.cofactor.to_string());
    for (auto [index, mult] : fac.multiplicities)
        if (mult != 1) throw integrity_error("reduced denominator has a repeated cyclotomic factor");

    AlgebraicPeriod out;
    out.indices = fac.indices();
    out.k = lcm_of(out.indices);
    out.numerator = std::move(p);
    out.denominator = std::move(q);
    return out;
}

namespace detail {

/// R_{A,B}(n) = t over k + diam consecutive positions, plus backward closure
/// of every window on the cycle.
inline bool verify_periodic_witness(const IntegerMultiset& an, std::uint64_t t, const std::vector<std::uint64_t>& word) {
    const auto d = static_cast<std::int64_t>(diam(an));
    const auto k = static_cast<std::int64_t>(word.size());
    auto seq = PeriodicWeightSequence::periodic(word);
    if (!weight_cap_check(an, t, seq)) return false;
    for (std::int64_t n = 0; n < k + d; ++n)
        if (representation_function(an, seq, n) != t) return false;
    if (d == 0) return true;
    WindowState window(static_cast<std::size_t>(d));
    for (std::int64_t n = 0; n < k; ++n) {
        for (std::int64_t j = 0; j < d; ++j) window[static_cast<std::size_t>(j)] = seq.at(n - d + 1 + j);
        auto prev = step_backward(window, an, t);
        if (!prev || *prev != seq.at(n - d)) return false;
    }
    return true;
}

/// Lexicographically largest rotation.
inline std::vector<std::uint64_t> canonical_rotation(const std::vector<std::uint64_t>& word) {
    std::vector<std::uint64_t> best = word;
    std::vector<std::uint64_t> rot = word;
    for (std::size_t i = 1; i < word.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot > best) best = rot;
    }
    return best;
}

struct CycleSearch {
    SearchStatus status = SearchStatus::ok;
    std::optional<std::vector<std::uint64_t>> best;  // shortest verified cycle word, canonical rotation
    std::uint64_t cycles = 0;
    std::uint64_t visited = 0;
};

/// Cycle detection on the functional graph of the forward step over
/// {0..t}^d. Each state is coloured once, so the total work is bounded by
/// the number of states visited.
inline CycleSearch search_cycles(const IntegerMultiset& an, std::uint64_t t, std::uint64_t budget) {
    const std::size_t d = diam(an);
    constexpr std::uint32_t kDone = 0;
    std::unordered_map<WindowState, std::uint32_t, boost::hash<WindowState>> colour;  // run id; kDone once settled
    CycleSearch out;

    auto consider_cycle = [&](const WindowState& entry) {
        std::vector<std::uint64_t> word;
        WindowState cur = entry;
        do {
            const std::uint64_t next = *step_forward(cur, an, t);
            word.push_back(next);
            cur.erase(cur.begin());
            cur.push_back(next);
        } while (cur != entry);
        if (!verify_periodic_witness(an, t, word)) return;
        ++out.cycles;
        auto canon = canonical_rotation(word);
        if (!out.best || canon.size() < out.best->size() || (canon.size() == out.best->size() && canon > *out.best))
            out.best = std::move(canon);
    };

    WindowState start(d, 0);
    std::uint32_t run = 0;
    std::vector<WindowState> path;
    for (;;) {
        if (!colour.contains(start)) {
            ++run;
            path.clear();
            WindowState cur = start;
            bool exhausted = false;
            for (;;) {
                auto it = colour.find(cur);
                if (it != colour.end()) {
                    if (it->second == run) consider_cycle(cur);
                    break;
                }
                if (out.visited >= budget) {
                    exhausted = true;
                    break;
                }
                colour.emplace(cur, run);
                path.push_back(cur);
                ++out.visited;
                auto next = step_forward(cur, an, t);
                if (!next) break;
                cur.erase(cur.begin());
                cur.push_back(*next);
            }
            for (const auto& s : path) colour[s] = kDone;
            if (exhausted) {
                // A cycle already in hand is still a valid witness; without one the
                // search cannot decide.
                if (!out.best) out.status = SearchStatus::inconclusive_budget;
                return out;
            }
        }
        // Advance the odometer over {0..t}^d.
        std::size_t i = 0;
        while (i < d && start[i] == t) start[i++] = 0;
        if (i == d) break;
        ++start[i];
    }
    return out;
}

}  // namespace detail

/// Decides whether some B satisfies R_{A,B}(n) = t for all n, and if so
/// returns the shortest-period witness found (fully periodic on Z).
inline TilingReport find_complement(const IntegerMultiset& a, std::uint64_t t, const TilingOptions& options = {}) {
    if (a.empty()) throw std::domain_error("find_complement: empty multiset");
    if (t == 0) throw std::domain_error("find_complement: t must be positive");

    auto [an, shift] = normalize(a);
    TilingReport report;
    report.t = t;
    report.shift = shift;
    report.diam = diam(an);
    report.epsilon = options.epsilon;
    report.newman_bound = newman_bound(an, t);
    report.biro_bound_log = biro_bound_log(an, options.epsilon);

    std::optional<std::vector<std::uint64_t>> word;
    if (report.diam == 0) {
        const std::uint64_t w = an.weight(0);
        report.states_visited = 1;
        if (t % w == 0) {
            word = std::vector<std::uint64_t>{t / w};
            report.cycle_count = 1;
        }
    } else {
        auto search = detail::search_cycles(an, t, options.budget);
        report.status = search.status;
        report.cycle_count = search.cycles;
        report.states_visited = search.visited;
        word = std::move(search.best);
    }
    if (!word) return report;

    report.exists = true;
    report.minimal_period_combinatorial = minimal_period(*word);
    report.witness = PeriodicWeightSequence::periodic(std::move(*word));
    if (options.algebraic_route) {
        auto alg = algebraic_minimal_period(an, t, *report.witness);
        report.minimal_period_algebraic = alg.k;
        report.cyclotomic_indices = std::move(alg.indices);
        report.agreement = report.minimal_period_algebraic == report.minimal_period_combinatorial;
    }
    return report;
}

}  // namespace tilekit
