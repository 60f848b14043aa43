#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tilekit/tiling.hpp"

using tilekit::BigInt;
using tilekit::IntegerMultiset;
using tilekit::PeriodicWeightSequence;
using tilekit::Polynomial;
using tilekit::SearchStatus;
using tilekit::TilingOptions;

namespace {

IntegerMultiset random_normalized(std::mt19937_64& rng, std::uint64_t d, std::uint64_t max_w) {
    IntegerMultiset::Weights w{{0, 1 + rng() % max_w}, {static_cast<std::int64_t>(d), 1 + rng() % max_w}};
    for (std::uint64_t i = 1; i < d; ++i)
        if (rng() % 2) w[static_cast<std::int64_t>(i)] = 1 + rng() % max_w;
    return IntegerMultiset(std::move(w));
}

std::vector<std::uint64_t> dense(const IntegerMultiset& a) {
    std::vector<std::uint64_t> out(tilekit::diam(a) + 1, 0);
    for (auto [p, w] : a.weights()) out[static_cast<std::size_t>(p)] = w;
    return out;
}

}  // namespace

TEST(Step, Forward) {
    const IntegerMultiset a{{0, 1}, {1, 1}};
    EXPECT_EQ(tilekit::step_forward({1}, a, 1), 0U);
    EXPECT_EQ(tilekit::step_forward({0}, a, 1), 1U);
    const IntegerMultiset b{{0, 2}, {1, 1}};
    EXPECT_EQ(tilekit::step_forward({1}, b, 1), 0U);
    EXPECT_EQ(tilekit::step_forward({0}, b, 1), std::nullopt);  // 2w = 1
    EXPECT_EQ(tilekit::step_forward({2}, a, 1), std::nullopt);  // negative right-hand side
    EXPECT_THROW(tilekit::step_forward({0, 0}, a, 1), std::domain_error);
    EXPECT_THROW(tilekit::step_forward({0}, IntegerMultiset{{1, 1}, {2, 1}}, 1), std::domain_error);
}

TEST(Step, Backward) {
    const IntegerMultiset a{{0, 1}, {1, 1}};
    EXPECT_EQ(tilekit::step_backward({1}, a, 1), 0U);
    EXPECT_EQ(tilekit::step_backward({0}, a, 1), 1U);
    EXPECT_EQ(tilekit::step_backward({1, 1}, IntegerMultiset{{0, 1}, {2, 1}}, 1), 0U);
    EXPECT_THROW(tilekit::step_backward({1}, IntegerMultiset{{0, 1}, {2, 1}}, 1), std::domain_error);
}

// A valid forward transition is undone by the backward step, and each state has
// at most one successor and one predecessor.
TEST(StepProperty, ForwardBackwardInverse) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t d = 1 + rng() % 5;
        const std::uint64_t t = 1 + rng() % 3;
        const IntegerMultiset a = random_normalized(rng, d, 2);
        tilekit::WindowState s(d);
        for (auto& x : s) x = rng() % (t + 1);
        auto next = tilekit::step_forward(s, a, t);
        if (!next) continue;
        tilekit::WindowState moved(s.begin() + 1, s.end());
        moved.push_back(*next);
        ASSERT_EQ(tilekit::step_backward(moved, a, t), s.front());
    }
}

TEST(MinimalPeriod, Examples) {
    EXPECT_EQ(tilekit::minimal_period({1, 0, 1, 0}), 2U);
    EXPECT_EQ(tilekit::minimal_period({1}), 1U);
    EXPECT_EQ(tilekit::minimal_period({1, 1, 0, 0}), 4U);
    EXPECT_EQ(tilekit::minimal_period({2, 2, 2}), 1U);
    EXPECT_THROW(tilekit::minimal_period({}), std::domain_error);
}

TEST(WeightCap, Examples) {
    const IntegerMultiset a{{0, 1}};
    EXPECT_TRUE(tilekit::weight_cap_check(a, 1, PeriodicWeightSequence::periodic({1, 0})));
    EXPECT_FALSE(tilekit::weight_cap_check(a, 1, PeriodicWeightSequence::periodic({2})));
    EXPECT_TRUE(tilekit::weight_cap_check(a, 3, PeriodicWeightSequence::periodic({3, 0, 0})));
    EXPECT_FALSE(tilekit::weight_cap_check(a, 1, PeriodicWeightSequence(0, {2}, {1}, false)));
}

TEST(Bounds, NewmanAndBiro) {
    EXPECT_EQ(tilekit::newman_bound(IntegerMultiset{{0, 1}, {3, 1}}, 2), 27);
    EXPECT_EQ(tilekit::newman_bound(IntegerMultiset{{0, 1}, {1, 1}}, 1), 2);
    EXPECT_EQ(tilekit::newman_bound(IntegerMultiset{{0, 1}, {100, 1}}, 1), tilekit::ipow(BigInt(2), 100));
    EXPECT_NEAR(tilekit::biro_bound_log(IntegerMultiset{{0, 1}, {7, 1}}, 1.0 / 3.0), 4.0, 1e-12);
    EXPECT_THROW(tilekit::biro_bound_log(IntegerMultiset{{0, 1}}, 0.0), std::domain_error);
}

TEST(FindComplement, Examples) {
    auto r1 = tilekit::find_complement(IntegerMultiset{{0, 1}, {1, 1}}, 1);
    ASSERT_TRUE(r1.exists);
    EXPECT_EQ(r1.witness->period(), (std::vector<std::uint64_t>{1, 0}));
    EXPECT_EQ(r1.minimal_period_combinatorial, 2U);
    EXPECT_EQ(r1.newman_bound, 2);

    auto r2 = tilekit::find_complement(IntegerMultiset{{0, 1}, {2, 1}}, 1);
    ASSERT_TRUE(r2.exists);
    EXPECT_EQ(r2.witness->period(), (std::vector<std::uint64_t>{1, 1, 0, 0}));
    EXPECT_EQ(r2.minimal_period_combinatorial, 4U);
    EXPECT_EQ(r2.newman_bound, 4);

    auto r3 = tilekit::find_complement(IntegerMultiset{{0, 2}}, 1);
    EXPECT_FALSE(r3.exists);
    EXPECT_EQ(r3.status, SearchStatus::ok);

    auto r4 = tilekit::find_complement(IntegerMultiset{{0, 1}, {1, 1}}, 2);
    ASSERT_TRUE(r4.exists);
    EXPECT_EQ(r4.witness->period(), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(r4.minimal_period_combinatorial, 1U);
    EXPECT_EQ(r4.cycle_count, 2U);  // [1] and [2, 0]

    auto r5 = tilekit::find_complement(IntegerMultiset{{0, 1}, {1, 1}, {2, 1}, {3, 1}}, 1);
    ASSERT_TRUE(r5.exists);
    EXPECT_EQ(r5.minimal_period_combinatorial, 4U);

    EXPECT_THROW(tilekit::find_complement(IntegerMultiset(), 1), std::domain_error);
    EXPECT_THROW(tilekit::find_complement(IntegerMultiset{{0, 1}}, 0), std::domain_error);
}

TEST(FindComplement, SingletonShortCircuit) {
    auto yes = tilekit::find_complement(IntegerMultiset{{7, 3}}, 6);
    ASSERT_TRUE(yes.exists);
    EXPECT_EQ(yes.witness->period(), (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(yes.minimal_period_algebraic, 1U);
    EXPECT_EQ(yes.newman_bound, 1);
    EXPECT_FALSE(tilekit::find_complement(IntegerMultiset{{7, 4}}, 6).exists);
}

TEST(FindComplement, TranslatedInputKeepsWitness) {
    auto r = tilekit::find_complement(IntegerMultiset{{-5, 1}, {-3, 1}}, 1);
    ASSERT_TRUE(r.exists);
    EXPECT_EQ(r.shift, -5);
    for (std::int64_t n = -10; n < 10; ++n)
        EXPECT_EQ(representation_function(IntegerMultiset{{-5, 1}, {-3, 1}}, *r.witness, n), 1);
}

TEST(FindComplement, BudgetIsHonest) {
    // {0, 20} with t = 3: no cycle can be found within 10 states.
    TilingOptions tight;
    tight.budget = 10;
    auto r = tilekit::find_complement(IntegerMultiset{{0, 1}, {20, 1}}, 3, tight);
    EXPECT_EQ(r.status, SearchStatus::inconclusive_budget);
    EXPECT_FALSE(r.exists);
    EXPECT_LE(r.states_visited, 10U);

    // Not-exists is only claimed after the whole space is explored.
    TilingOptions tiny;
    tiny.budget = 1;
    auto r2 = tilekit::find_complement(IntegerMultiset{{0, 2}, {1, 1}}, 1, tiny);
    EXPECT_EQ(r2.status, SearchStatus::inconclusive_budget);
}

TEST(GammaRationalForm, Examples) {
    auto [p1, q1] = tilekit::gamma_rational_form(PeriodicWeightSequence(0, {}, {1}, false));
    EXPECT_EQ(p1, Polynomial({1}));
    EXPECT_EQ(q1, Polynomial({1, -1}));

    auto [p2, q2] = tilekit::gamma_rational_form(PeriodicWeightSequence::periodic({1, 0}));
    EXPECT_EQ(p2, Polynomial({1}));
    EXPECT_EQ(q2, Polynomial({1, 0, -1}));

    // 2 + x + x^2 + ... = (2 - x) / (1 - x)
    auto [p3, q3] = tilekit::gamma_rational_form(PeriodicWeightSequence(0, {2}, {1}, false));
    EXPECT_EQ(p3, Polynomial({2, -1}));
    EXPECT_EQ(q3, Polynomial({1, -1}));

    // 1 + x^2 + x^4 + ... written with a redundant period block [1, 0, 1, 0]
    auto [p4, q4] = tilekit::gamma_rational_form(PeriodicWeightSequence::periodic({1, 0, 1, 0}));
    EXPECT_EQ(p4, Polynomial({1}));
    EXPECT_EQ(q4, Polynomial({1, 0, -1}));

    EXPECT_THROW(tilekit::gamma_rational_form(PeriodicWeightSequence(-1, {}, {1}, false)), std::domain_error);
}

// p/q reproduces the weights as a power series: q * (series) = p up to the truncation.
TEST(GammaRationalFormProperty, SeriesIdentity) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint64_t> pre(rng() % 4), per(1 + rng() % 6);
        for (auto& x : pre) x = rng() % 4;
        for (auto& x : per) x = rng() % 4;
        const PeriodicWeightSequence b(static_cast<std::int64_t>(rng() % 3), pre, per, false);
        auto [p, q] = tilekit::gamma_rational_form(b);
        ASSERT_GT(q[0], 0);
        ASSERT_EQ(gcd(p, q).degree(), 0);
        const std::size_t terms = 60;
        std::vector<BigInt> series(terms);
        for (std::size_t n = 0; n < terms; ++n) series[n] = b.at(static_cast<std::int64_t>(n));
        const Polynomial prod = q * Polynomial(series);
        for (std::size_t n = 0; n + q.size() < terms; ++n) ASSERT_EQ(prod[n], p[n]) << "n=" << n;
    }
}

TEST(AlgebraicMinimalPeriod, Examples) {
    auto a1 = tilekit::algebraic_minimal_period(IntegerMultiset{{0, 1}, {1, 1}}, 1, PeriodicWeightSequence::periodic({1, 0}));
    EXPECT_EQ(a1.denominator, Polynomial({1, 0, -1}));
    EXPECT_EQ(a1.indices, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(a1.k, 2U);

    auto a2 = tilekit::algebraic_minimal_period(IntegerMultiset{{0, 1}, {1, 1}}, 2, PeriodicWeightSequence::periodic({1}));
    EXPECT_EQ(a2.denominator, Polynomial({1, -1}));
    EXPECT_EQ(a2.indices, (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(a2.k, 1U);

    auto a3 =
        tilekit::algebraic_minimal_period(IntegerMultiset{{0, 1}, {2, 1}}, 1, PeriodicWeightSequence::periodic({1, 1, 0, 0}));
    // (1 + x) / (1 - x^4) reduces to 1 / ((1 - x)(1 + x^2))
    EXPECT_EQ(a3.denominator, Polynomial({1, -1, 1, -1}));
    EXPECT_EQ(a3.indices, (std::vector<std::uint64_t>{1, 4}));
    EXPECT_EQ(a3.k, 4U);
}

TEST(AlgebraicMinimalPeriod, RejectsNonComplements) {
    EXPECT_THROW(tilekit::algebraic_minimal_period(IntegerMultiset{{0, 1}, {1, 1}}, 1, PeriodicWeightSequence::periodic({1, 1})),
                 tilekit::integrity_error);
}

// Every witness: R = t over a full window, Newman bound, both routes agree,
// and |A| * (period sum) = t * k.
TEST(FindComplementProperty, WitnessInvariants) {
    std::mt19937_64 rng(43);
    int witnesses = 0;
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t d = 1 + rng() % 6;
        const std::uint64_t t = 1 + rng() % 3;
        const IntegerMultiset a = random_normalized(rng, d, 2);
        auto r = tilekit::find_complement(a, t);
        ASSERT_EQ(r.status, SearchStatus::ok);
        if (!r.exists) continue;
        ++witnesses;
        const std::uint64_t k = *r.minimal_period_combinatorial;
        for (std::int64_t n = 0; n < static_cast<std::int64_t>(k + d); ++n)
            ASSERT_EQ(representation_function(a, *r.witness, n), t);
        ASSERT_LE(BigInt(k), r.newman_bound);
        ASSERT_TRUE(r.agreement);
        ASSERT_EQ(r.minimal_period_algebraic, k);
        BigInt period_sum = 0;
        for (auto w : r.witness->period()) period_sum += w;
        ASSERT_EQ(a.total_weight() * period_sum, BigInt(t) * k);
    }
    EXPECT_GT(witnesses, 50);
}

// Existence agrees with the brute-force oracle beyond the acceptance range.
TEST(FindComplementProperty, OracleEquivalenceDiam7And8) {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 120; ++i) {
        const std::uint64_t d = 7 + rng() % 2;
        const std::uint64_t t = 1 + rng() % 3;
        const IntegerMultiset a = random_normalized(rng, d, 2);
        auto r = tilekit::find_complement(a, t);
        auto o = oracle::brute_force_complement(dense(a), t);
        ASSERT_EQ(r.exists, o.exists);
        if (o.exists) {
            ASSERT_EQ(*r.minimal_period_combinatorial, o.shortest_period);
        }
    }
}
