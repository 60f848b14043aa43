#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilekit/arith.hpp"
#include "tilekit/cyclotomic.hpp"
#include "tilekit/polynomial.hpp"
#include "tilekit/tiling.hpp"

namespace tilekit {

enum class LemmaId { L1, L2, L3, L4 };

inline const char* to_string(LemmaId id) {
    switch (id) {
        case LemmaId::L1: return "L1";
        case LemmaId::L2: return "L2";
        case LemmaId::L3: return "L3";
        case LemmaId::L4: return "L4";
    }
    return "?";
}

/// Upper limits on c in the norm hypothesis: the lemma version and the one
/// used by the period theorems.
inline const double kLemma4CLimit = 100.0 * std::log(2.0) - 1.0;
inline const double kTheoremCLimit = 100.0 * std::log(2.0) - 2.0;

/// Real numbers in reports are printed with a fixed format so that reruns are
/// byte-identical.
inline std::string format_real(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

/// One checked instance. observed/bound are decimal strings (exact for
/// integers). `pass` is the inequality outcome; whether a failure counts as a
/// violation depends on the lemma (see LemmaReport::add).
struct LemmaCheck {
    LemmaId lemma = LemmaId::L1;
    long n = 0;
    std::uint64_t d = 0;
    std::string observed;
    std::string bound;
    bool pass = true;
    double ratio = 0.0;
    std::uint64_t mechanism_checks = 0;      // L4 only
    std::uint64_t mechanism_violations = 0;  // L4 only
    std::string notes;
};

struct LemmaReport {
    LemmaId lemma = LemmaId::L1;
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
    double max_ratio = 0.0;
    std::string notes;
    std::vector<LemmaCheck> rows;

    explicit LemmaReport(LemmaId id) : lemma(id) {
        switch (id) {
            case LemmaId::L1: notes = "unconditional; asserted"; break;
            case LemmaId::L2: notes = "holds only for n >= n0(eps), unspecified; report only"; break;
            case LemmaId::L3: notes = "holds only for K >= K0(eps), unspecified; report only"; break;
            case LemmaId::L4:
                notes = "divisibility mechanism asserted; V bound reported only; c limits " +
                        format_real(kLemma4CLimit) + " (lemma) and " + format_real(kTheoremCLimit) + " (theorems)";
                break;
        }
    }

    void add(LemmaCheck check) {
        if (check.lemma != lemma) throw std::domain_error("LemmaReport::add: lemma mismatch");
        ++instances;
        if (lemma == LemmaId::L1 && !check.pass) ++violations;
        if (lemma == LemmaId::L4) violations += check.mechanism_violations;
        if (instances == 1 || check.ratio > max_ratio) max_ratio = check.ratio;
        rows.push_back(std::move(check));
    }
};

namespace detail {

inline double ratio_of(const BigInt& num, const BigInt& den) {
    if (den == 0) return num == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    using boost::multiprecision::abs;
    return boost::multiprecision::cpp_rational(abs(num), abs(den)).convert_to<double>();
}

}  // namespace detail

/// f = (x^d - 1) h and g = f / (x^d - 1); checks ||g|| <= deg(f) ||f||.
inline LemmaCheck check_lemma1(const Polynomial& h, std::uint64_t d) {
    if (h.is_zero()) throw std::domain_error("check_lemma1: h must be nonzero");
    if (d == 0) throw std::domain_error("check_lemma1: d must be positive");
    const Polynomial divisor = Polynomial::x_pow_minus_one(d);
    const Polynomial f = divisor * h;
    const Polynomial g = exact_div(f, divisor);
    LemmaCheck c;
    c.lemma = LemmaId::L1;
    c.n = f.degree();
    c.d = d;
    const BigInt lhs = norm1(g);
    const BigInt rhs = BigInt(c.n) * norm1(f);
    c.observed = lhs.str();
    c.bound = rhs.str();
    c.pass = lhs <= rhs;
    c.ratio = detail::ratio_of(lhs, rhs);
    return c;
}

/// g = f / Phi_m; records ||g|| / ||f|| against e^(n^eps).
inline LemmaCheck check_lemma2(const Polynomial& f, std::uint64_t m, double epsilon) {
    if (f.is_zero()) throw std::domain_error("check_lemma2: f must be nonzero");
    const Polynomial g = exact_div(f, cyclotomic(m));
    LemmaCheck c;
    c.lemma = LemmaId::L2;
    c.n = f.degree();
    c.d = m;
    const double growth = detail::ratio_of(norm1(g), norm1(f));
    const double limit = std::exp(std::pow(static_cast<double>(c.n), epsilon));
    c.observed = format_real(growth);
    c.bound = format_real(limit);
    c.pass = growth <= limit;
    c.ratio = growth / limit;
    c.notes = "||g|| = " + norm1(g).str() + ", ||f|| = " + norm1(f).str();
    return c;
}

/// Number of r in [1, K] with omega(r) = j, indexed by j.
inline std::vector<std::uint64_t> omega_counts(std::uint64_t k) {
    std::vector<std::uint32_t> om(k + 1, 0);
    for (std::uint64_t p = 2; p <= k; ++p) {
        if (om[p] != 0) continue;
        for (std::uint64_t m = p; m <= k; m += p) ++om[m];
    }
    std::vector<std::uint64_t> counts;
    for (std::uint64_t r = 1; r <= k; ++r) {
        if (om[r] >= counts.size()) counts.resize(om[r] + 1, 0);
        ++counts[om[r]];
    }
    return counts;
}

/// sum_{r<=K} C^omega(r) with C = 1e5 log K, against K^(1+eps). The sum is
/// kept exactly as its coefficient list in C; the value is evaluated in long
/// double for the comparison.
inline LemmaCheck check_lemma3(std::uint64_t k, double epsilon) {
    if (k < 2) throw std::domain_error("check_lemma3: K must be at least 2");
    const auto counts = omega_counts(k);
    const long double cval = 1e5L * std::log(static_cast<long double>(k));
    long double sum = 0;
    long double power = 1;
    std::ostringstream poly;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        sum += static_cast<long double>(counts[j]) * power;
        power *= cval;
        if (j > 0) poly << " + ";
        poly << counts[j];
        if (j == 1) poly << "*C";
        if (j > 1) poly << "*C^" << j;
    }
    const long double limit = std::pow(static_cast<long double>(k), 1.0L + epsilon);
    LemmaCheck c;
    c.lemma = LemmaId::L3;
    c.n = static_cast<long>(k);
    c.observed = format_real(static_cast<double>(sum));
    c.bound = format_real(static_cast<double>(limit));
    c.pass = sum <= limit;
    c.ratio = static_cast<double>(sum / limit);
    c.notes = "sum = " + poly.str() + ", C = " + format_real(static_cast<double>(cval));
    return c;
}

/// V = multiplicity of Phi_d in f against (100 log n)^omega(d) (reported), and
/// the exact divisibility behind it (asserted): for every prime p | d with
/// d = p^r d1 and every 0 <= U <= V, p^(phi(d1)(V-U)) divides
/// N = prod_{xi in mu_d1} f^(U)(xi) whenever N != 0.
inline LemmaCheck check_lemma4(const Polynomial& f, std::uint64_t d, double c_exponent, bool mechanism = true) {
    if (f.is_zero()) throw std::domain_error("check_lemma4: f must be nonzero");
    if (f.eval(1) == 0) throw std::domain_error("check_lemma4: requires f(1) != 0");
    LemmaCheck c;
    c.lemma = LemmaId::L4;
    c.n = f.degree();
    c.d = d;
    const unsigned v = cyclotomic_multiplicity(f, d);
    const double limit = std::pow(100.0 * std::log(static_cast<double>(std::max<long>(c.n, 1))), omega(d));
    c.observed = std::to_string(v);
    c.bound = format_real(limit);
    c.pass = v <= limit;
    c.ratio = limit > 0 ? v / limit : (v == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    const bool hypothesis =
        c.n >= 2 && log_abs(norm1(f)) <= c_exponent * std::log(static_cast<double>(c.n));
    c.notes = std::string("norm hypothesis ||f|| <= n^c with c = ") + format_real(c_exponent) +
              (hypothesis ? " holds" : " fails");

    if (mechanism) {
        for (auto [p, r] : factorize(d)) {
            std::uint64_t d1 = d;
            for (unsigned i = 0; i < r; ++i) d1 /= p;
            const std::uint64_t phi_d1 = euler_phi(d1);
            for (unsigned u = 0; u <= v; ++u) {
                const Polynomial fu = derivative(f, u);
                if (fu.is_zero()) continue;
                const BigInt n_val = conjugate_product(fu, d1);
                ++c.mechanism_checks;
                if (n_val == 0) continue;
                const BigInt modulus = ipow(BigInt(p), phi_d1 * (v - u));
                if (n_val % modulus != 0) ++c.mechanism_violations;
            }
        }
    }
    return c;
}

/// One row of the period-bound comparison: observed log k against
/// n^(1/3+eps) for both n = diam(A) and n = diam(A) + 1 (the latter equals
/// diam(A) + m with m = 1, the complementing case).
struct PeriodBoundRow {
    std::uint64_t instance_id = 0;
    std::uint64_t diam = 0;
    std::uint64_t t = 0;
    std::uint64_t k = 0;
    double log_k = 0.0;
    double bound_diam = 0.0;
    double bound_diam_plus_one = 0.0;
    bool satisfied_diam = false;
    bool satisfied_diam_plus_one = false;
    double log_newman = 0.0;
};

inline std::vector<PeriodBoundRow> theorem8_bound_report(const std::vector<TilingReport>& instances, double epsilon) {
    if (!(epsilon > 0)) throw std::domain_error("epsilon must be positive");
    std::vector<PeriodBoundRow> rows;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& rep = instances[i];
        if (!rep.exists || !rep.minimal_period_combinatorial) continue;
        PeriodBoundRow row;
        row.instance_id = i;
        row.diam = rep.diam;
        row.t = rep.t;
        row.k = *rep.minimal_period_combinatorial;
        row.log_k = std::log(static_cast<double>(row.k));
        row.bound_diam = std::pow(static_cast<double>(rep.diam), 1.0 / 3.0 + epsilon);
        row.bound_diam_plus_one = std::pow(static_cast<double>(rep.diam) + 1.0, 1.0 / 3.0 + epsilon);
        row.satisfied_diam = row.log_k <= row.bound_diam;
        row.satisfied_diam_plus_one = row.log_k <= row.bound_diam_plus_one;
        row.log_newman = log_abs(rep.newman_bound);
        rows.push_back(row);
    }
    return rows;
}

// Seeded instance generators shared by the CLI and the test suites.

/// Nonzero polynomial of degree <= max_degree with coefficients in
/// [-max_coeff, max_coeff].
inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t max_degree, std::int64_t max_coeff) {
    std::uniform_int_distribution<std::size_t> deg_dist(0, max_degree);
    std::uniform_int_distribution<std::int64_t> coeff_dist(-max_coeff, max_coeff);
    for (;;) {
        std::vector<BigInt> c(deg_dist(rng) + 1);
        for (auto& x : c) x = coeff_dist(rng);
        Polynomial p(std::move(c));
        if (!p.is_zero()) return p;
    }
}

struct Lemma4Instance {
    Polynomial f;
    std::uint64_t d = 1;
};

/// f = Phi_{p^r d1}^V * u with f(1) != 0, small p, r, d1 and V in [1, 4].
inline Lemma4Instance random_lemma4_instance(std::mt19937_64& rng) {
    static const std::uint64_t primes[] = {2, 3, 5, 7};
    std::uniform_int_distribution<int> pick_p(0, 3), pick_r(1, 2), pick_d1(1, 6), pick_v(1, 4);
    for (;;) {
        const std::uint64_t p = primes[pick_p(rng)];
        const int r = pick_r(rng);
        const std::uint64_t d1 = static_cast<std::uint64_t>(pick_d1(rng));
        if (d1 % p == 0) continue;
        std::uint64_t d = d1;
        for (int i = 0; i < r; ++i) d *= p;
        const int v = pick_v(rng);
        Polynomial u = random_polynomial(rng, 6, 5);
        if (u.eval(1) == 0) continue;
        Polynomial f = u;
        for (int i = 0; i < v; ++i) f = f * cyclotomic(d);
        return {std::move(f), d};
    }
}

struct BoundsSuiteConfig {
    std::uint64_t lemma1_count = 100;
    std::uint64_t lemma2_count = 50;
    std::vector<std::uint64_t> lemma3_k = {2, 4, 10, 100, 1000, 10000};
    std::uint64_t lemma4_count = 50;
    double epsilon = 0.5;
    double c_exponent = kLemma4CLimit;
    std::uint64_t seed = 20240601;
};

/// Runs all four lemma checks on seeded instances. Deterministic for a fixed
/// config.
inline std::vector<LemmaReport> run_bounds_suite(const BoundsSuiteConfig& cfg) {
    std::vector<LemmaReport> out{LemmaReport(LemmaId::L1), LemmaReport(LemmaId::L2), LemmaReport(LemmaId::L3),
                                 LemmaReport(LemmaId::L4)};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::uint64_t> d_dist(1, 20);
    for (std::uint64_t i = 0; i < cfg.lemma1_count; ++i) {
        Polynomial h = random_polynomial(rng, 50, 1'000'000);
        out[0].add(check_lemma1(h, d_dist(rng)));
    }
    std::uniform_int_distribution<std::uint64_t> m_dist(1, 30);
    for (std::uint64_t i = 0; i < cfg.lemma2_count; ++i) {
        const std::uint64_t m = m_dist(rng);
        Polynomial f = random_polynomial(rng, 30, 100) * cyclotomic(m);
        out[1].add(check_lemma2(f, m, cfg.epsilon));
    }
    for (auto k : cfg.lemma3_k) out[2].add(check_lemma3(k, cfg.epsilon));
    for (std::uint64_t i = 0; i < cfg.lemma4_count; ++i) {
        auto inst = random_lemma4_instance(rng);
        out[3].add(check_lemma4(inst.f, inst.d, cfg.c_exponent));
    }
    return out;
}

}  // namespace tilekit
