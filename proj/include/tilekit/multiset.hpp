#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tilekit/bigint.hpp"
#include "tilekit/polynomial.hpp"

namespace tilekit {

/// Finite multiset of integers, stored sparsely as support point -> weight.
/// Every stored weight is at least 1; absent points have weight 0.
class IntegerMultiset {
public:
    using Weights = std::map<std::int64_t, std::uint64_t>;

    IntegerMultiset() = default;

    explicit IntegerMultiset(Weights weights) : weights_(std::move(weights)) {
        for (auto [point, w] : weights_)
            if (w == 0) throw std::domain_error("multiset weights must be positive");
    }

    IntegerMultiset(std::initializer_list<std::pair<const std::int64_t, std::uint64_t>> init)
        : IntegerMultiset(Weights(init)) {}

    /// Every element of the set with weight 1.
    static IntegerMultiset from_set(const std::vector<std::int64_t>& points) {
        Weights w;
        for (auto p : points) w[p] = 1;
        return IntegerMultiset(std::move(w));
    }

    const Weights& weights() const noexcept { return weights_; }
    bool empty() const noexcept { return weights_.empty(); }
    std::size_t support_size() const noexcept { return weights_.size(); }

    std::uint64_t weight(std::int64_t point) const {
        auto it = weights_.find(point);
        return it == weights_.end() ? 0 : it->second;
    }

    std::int64_t min() const {
        require_nonempty();
        return weights_.begin()->first;
    }

    std::int64_t max() const {
        require_nonempty();
        return weights_.rbegin()->first;
    }

    BigInt total_weight() const {
        BigInt sum = 0;
        for (auto [point, w] : weights_) sum += w;
        return sum;
    }

    friend bool operator==(const IntegerMultiset&, const IntegerMultiset&) = default;

private:
    void require_nonempty() const {
        if (weights_.empty()) throw std::domain_error("operation requires a nonempty multiset");
    }

    Weights weights_;
};

/// Eventually periodic weight assignment on Z.
///
/// Positions offset .. offset+|preperiod|-1 carry the preperiod; from
/// period_start() on, the period block repeats. Positions before offset have
/// weight 0, unless the sequence is two-sided, in which case the period block
/// extends over all of Z (and the preperiod must be empty).
class PeriodicWeightSequence {
public:
    PeriodicWeightSequence(std::int64_t offset, std::vector<std::uint64_t> preperiod, std::vector<std::uint64_t> period,
                           bool two_sided)
        : offset_(offset), preperiod_(std::move(preperiod)), period_(std::move(period)), two_sided_(two_sided) {
        if (period_.empty()) throw std::domain_error("period block must be nonempty");
        if (two_sided_ && !preperiod_.empty())
            throw std::domain_error("a two-sided periodic sequence has no preperiod");
    }

    static PeriodicWeightSequence periodic(std::vector<std::uint64_t> block, std::int64_t offset = 0) {
        return {offset, {}, std::move(block), true};
    }

    std::int64_t offset() const noexcept { return offset_; }
    const std::vector<std::uint64_t>& preperiod() const noexcept { return preperiod_; }
    const std::vector<std::uint64_t>& period() const noexcept { return period_; }
    bool two_sided() const noexcept { return two_sided_; }
    std::int64_t period_start() const noexcept { return offset_ + static_cast<std::int64_t>(preperiod_.size()); }

    std::uint64_t at(std::int64_t n) const {
        const std::int64_t start = period_start();
        if (n >= start || two_sided_) {
            const auto k = static_cast<std::int64_t>(period_.size());
            std::int64_t r = (n - start) % k;
            if (r < 0) r += k;
            return period_[static_cast<std::size_t>(r)];
        }
        if (n >= offset_) return preperiod_[static_cast<std::size_t>(n - offset_)];
        return 0;
    }

    friend bool operator==(const PeriodicWeightSequence&, const PeriodicWeightSequence&) = default;

private:
    std::int64_t offset_;
    std::vector<std::uint64_t> preperiod_;
    std::vector<std::uint64_t> period_;
    bool two_sided_;
};

/// psi(x_1..x_h) = u_1 x_1 + ... + u_h x_h, extended by v*y.
struct LinearForm {
    std::vector<std::int64_t> u;
    std::int64_t v = 1;

    void validate() const {
        if (u.empty()) throw std::domain_error("linear form needs at least one coefficient");
        for (auto c : u)
            if (c == 0) throw std::domain_error("linear form coefficients must be nonzero");
        if (v == 0) throw std::domain_error("linear form coefficient v must be nonzero");
    }
};

/// Translates A so that its minimum is 0; returns the translate and min(A).
inline std::pair<IntegerMultiset, std::int64_t> normalize(const IntegerMultiset& a) {
    const std::int64_t shift = a.min();
    IntegerMultiset::Weights w;
    for (auto [point, weight] : a.weights()) w.emplace_hint(w.end(), point - shift, weight);
    return {IntegerMultiset(std::move(w)), shift};
}

inline std::uint64_t diam(const IntegerMultiset& a) { return static_cast<std::uint64_t>(a.max() - a.min()); }

/// lambda(x) = sum of w_A(a) x^a.
inline Polynomial mask_polynomial(const IntegerMultiset& a) {
    if (a.empty()) return {};
    if (a.min() < 0) throw std::domain_error("mask_polynomial: negative exponent, normalize the multiset first");
    std::vector<BigInt> c(static_cast<std::size_t>(a.max()) + 1);
    for (auto [point, w] : a.weights()) c[static_cast<std::size_t>(point)] = w;
    return Polynomial(std::move(c));
}

/// R_{A,B}(n) = sum over a in A of w_A(a) * w_B(n - a).
inline BigInt representation_function(const IntegerMultiset& a, const PeriodicWeightSequence& b, std::int64_t n) {
    BigInt sum = 0;
    for (auto [point, w] : a.weights()) {
        const std::uint64_t wb = b.at(n - point);
        if (wb != 0) sum += BigInt(w) * wb;
    }
    return sum;
}

/// The weighted image psi(A_1 x ... x A_h): the weight of r counts the tuples
/// with u_1 a_1 + ... + u_h a_h = r. Also returns v, the scale of the
/// complement (B tiles through rho iff vB t-complements the image).
inline std::pair<IntegerMultiset, std::int64_t> linear_form_to_multiset(const std::vector<std::vector<std::int64_t>>& sets,
                                                                        const LinearForm& form) {
    form.validate();
    if (sets.size() != form.u.size())
        throw std::domain_error("linear form has " + std::to_string(form.u.size()) + " coefficients but " +
                                std::to_string(sets.size()) + " sets were given");
    std::map<std::int64_t, std::uint64_t> acc{{0, 1}};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::set<std::int64_t> elems(sets[i].begin(), sets[i].end());
        if (elems.empty()) throw std::domain_error("linear form sets must be nonempty");
        std::map<std::int64_t, std::uint64_t> next;
        for (auto [r, count] : acc)
            for (auto e : elems) next[r + form.u[i] * e] += count;
        acc = std::move(next);
    }
    return {IntegerMultiset(std::move(acc)), form.v};
}

}  // namespace tilekit
