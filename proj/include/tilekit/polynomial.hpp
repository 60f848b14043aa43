#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tilekit/bigint.hpp"
#include "tilekit/errors.hpp"

namespace tilekit {

namespace detail {

template <class Int>
Int abs_value(const Int& v) {
    return v < 0 ? Int(-v) : v;
}

template <class Int>
Int int_gcd(Int a, Int b) {
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        Int r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

template <class Int>
Int int_pow(Int base, std::uint64_t exponent) {
    Int result = 1;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

template <class Int>
std::uint64_t residue(const Int& value, std::uint64_t modulus) {
    if constexpr (std::is_integral_v<Int>) {
        auto r = static_cast<long long>(value % static_cast<Int>(modulus));
        if (r < 0) r += static_cast<long long>(modulus);
        return static_cast<std::uint64_t>(r);
    } else {
        Int r = value % modulus;
        if (r < 0) r += modulus;
        return r.template convert_to<std::uint64_t>();
    }
}

}  // namespace detail

/// Dense univariate polynomial with exact integer coefficients, lowest degree
/// first. The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and degree() is -1 for it.
template <class Int>
class BasicPolynomial {
public:
    using coefficient_type = Int;

    BasicPolynomial() = default;
    BasicPolynomial(std::initializer_list<Int> coeffs) : coeffs_(coeffs) { trim(); }
    explicit BasicPolynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static BasicPolynomial constant(Int c) { return BasicPolynomial(std::vector<Int>{std::move(c)}); }

    static BasicPolynomial monomial(Int c, std::size_t degree) {
        std::vector<Int> v(degree + 1);
        v[degree] = std::move(c);
        return BasicPolynomial(std::move(v));
    }

    /// x^n - 1
    static BasicPolynomial x_pow_minus_one(std::size_t n) {
        if (n == 0) return {};
        std::vector<Int> v(n + 1);
        v[0] = -1;
        v[n] = 1;
        return BasicPolynomial(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Coefficient of x^i; zero beyond the degree.
    Int operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }

    const Int& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    std::span<const Int> coefficients() const noexcept { return coeffs_; }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    BasicPolynomial& operator+=(const BasicPolynomial& other) {
        if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
        trim();
        return *this;
    }

    BasicPolynomial& operator-=(const BasicPolynomial& other) {
        if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
        trim();
        return *this;
    }

    BasicPolynomial& operator*=(const Int& scalar) {
        if (scalar == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& c : coeffs_) c *= scalar;
        return *this;
    }

    /// Divides every coefficient by scalar; each division must be exact.
    BasicPolynomial& divide_exact(const Int& scalar) {
        if (scalar == 0) throw std::domain_error("division of a polynomial by zero");
        for (auto& c : coeffs_) {
            if (c % scalar != 0) throw divisibility_error("scalar division is not exact");
            c /= scalar;
        }
        return *this;
    }

    /// Multiplies by x^k.
    BasicPolynomial shifted(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<Int> v(coeffs_.size() + k);
        std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + static_cast<std::ptrdiff_t>(k));
        return BasicPolynomial(std::move(v));
    }

    friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
    friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
    friend BasicPolynomial operator*(BasicPolynomial a, const Int& s) { return a *= s; }
    friend BasicPolynomial operator*(const Int& s, BasicPolynomial a) { return a *= s; }

    friend BasicPolynomial operator-(BasicPolynomial a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }

    // Schoolbook product; degrees in this project stay in the low thousands.
    friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return BasicPolynomial(std::move(out));
    }

    friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Int& c = coeffs_[i];
            if (c == 0) continue;
            Int mag = detail::abs_value(c);
            if (first) {
                if (c < 0) os << '-';
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (mag != 1 || i == 0) os << mag;
            if (i >= 1) os << 'x';
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const BasicPolynomial& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Int> coeffs_;
};

using Polynomial = BasicPolynomial<BigInt>;

/// Sum of absolute values of the coefficients.
template <class Int>
Int norm1(const BasicPolynomial<Int>& f) {
    Int acc = 0;
    for (const auto& c : f.coefficients()) acc += detail::abs_value(c);
    return acc;
}

/// Formal derivative of the given order.
template <class Int>
BasicPolynomial<Int> derivative(const BasicPolynomial<Int>& f, std::size_t order = 1) {
    if (order == 0) return f;
    if (f.degree() < static_cast<long>(order)) return {};
    auto c = f.coefficients();
    std::vector<Int> out(c.size() - order);
    for (std::size_t i = order; i < c.size(); ++i) {
        Int falling = 1;
        for (std::size_t j = 0; j < order; ++j) falling *= Int(i - j);
        out[i - order] = c[i] * falling;
    }
    return BasicPolynomial<Int>(std::move(out));
}

/// Quotient f/g if g divides f in Z[x], otherwise nullopt. Throws
/// std::domain_error when g is zero.
template <class Int>
std::optional<BasicPolynomial<Int>> try_exact_div(const BasicPolynomial<Int>& f, const BasicPolynomial<Int>& g) {
    if (g.is_zero()) throw std::domain_error("polynomial division by zero");
    if (f.is_zero()) return BasicPolynomial<Int>{};
    if (f.degree() < g.degree()) return std::nullopt;

    const auto gc = g.coefficients();
    const std::size_t dg = gc.size() - 1;
    const Int& lead = gc.back();
    std::vector<Int> rem(f.coefficients().begin(), f.coefficients().end());
    std::vector<Int> quot(rem.size() - dg);
    for (std::size_t i = rem.size(); i-- > dg;) {
        if (rem[i] == 0) continue;
        if (rem[i] % lead != 0) return std::nullopt;
        Int qc = rem[i] / lead;
        for (std::size_t j = 0; j <= dg; ++j) rem[i - dg + j] -= qc * gc[j];
        quot[i - dg] = std::move(qc);
    }
    for (std::size_t i = 0; i < dg; ++i)
        if (rem[i] != 0) return std::nullopt;
    return BasicPolynomial<Int>(std::move(quot));
}

/// Exact quotient f/g. Throws std::domain_error for g = 0 and
/// divisibility_error when g does not divide f.
template <class Int>
BasicPolynomial<Int> exact_div(const BasicPolynomial<Int>& f, const BasicPolynomial<Int>& g) {
    auto q = try_exact_div(f, g);
    if (!q) throw divisibility_error("(" + g.to_string() + ") does not divide (" + f.to_string() + ")");
    return std::move(*q);
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
template <class Int>
BasicPolynomial<Int> pseudo_remainder(const BasicPolynomial<Int>& a, const BasicPolynomial<Int>& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by the zero polynomial");
    if (a.degree() < b.degree()) return a;
    const auto bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    const Int& lead = bc.back();
    std::vector<Int> r(a.coefficients().begin(), a.coefficients().end());
    long pending = a.degree() - b.degree() + 1;
    while (!r.empty() && r.size() - 1 >= db) {
        const std::size_t top = r.size() - 1;
        Int s = r[top];
        for (auto& c : r) c *= lead;
        for (std::size_t j = 0; j <= db; ++j) r[top - db + j] -= s * bc[j];
        while (!r.empty() && r.back() == 0) r.pop_back();
        --pending;
    }
    Int scale = detail::int_pow(lead, static_cast<std::uint64_t>(pending));
    for (auto& c : r) c *= scale;
    return BasicPolynomial<Int>(std::move(r));
}

/// Nonnegative gcd of the coefficients (0 for the zero polynomial).
template <class Int>
Int content(const BasicPolynomial<Int>& f) {
    Int g = 0;
    for (const auto& c : f.coefficients()) {
        g = detail::int_gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

/// f divided by its content, with positive leading coefficient.
template <class Int>
BasicPolynomial<Int> primitive_part(BasicPolynomial<Int> f) {
    if (f.is_zero()) return f;
    Int c = content(f);
    if (f.leading() < 0) c = -c;
    return f.divide_exact(c);
}

/// gcd in Z[x], normalized to a positive leading coefficient. gcd(0, 0) = 0.
template <class Int>
BasicPolynomial<Int> gcd(const BasicPolynomial<Int>& a, const BasicPolynomial<Int>& b) {
    if (a.is_zero()) return primitive_part(b) * content(b);
    if (b.is_zero()) return primitive_part(a) * content(a);
    Int c = detail::int_gcd(content(a), content(b));
    BasicPolynomial<Int> u = primitive_part(a);
    BasicPolynomial<Int> v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        BasicPolynomial<Int> r = pseudo_remainder(u, v);
        u = std::move(v);
        v = primitive_part(std::move(r));
    }
    return primitive_part(std::move(u)) * c;
}

/// Resultant by the subresultant pseudo-remainder sequence. With the usual
/// convention res(a, b) = lc(a)^deg(b) * prod over roots r of a of b(r).
template <class Int>
Int resultant(BasicPolynomial<Int> a, BasicPolynomial<Int> b) {
    if (a.is_zero() || b.is_zero()) return 0;
    Int sign = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -1;
        std::swap(a, b);
    }
    if (b.degree() == 0) return sign * detail::int_pow(b.leading(), static_cast<std::uint64_t>(a.degree()));

    Int ca = content(a);
    Int cb = content(b);
    if (a.leading() < 0) ca = -ca;
    if (b.leading() < 0) cb = -cb;
    Int scale = detail::int_pow(ca, static_cast<std::uint64_t>(b.degree())) *
                detail::int_pow(cb, static_cast<std::uint64_t>(a.degree()));
    a.divide_exact(ca);
    b.divide_exact(cb);

    Int g = 1;
    Int h = 1;
    for (;;) {
        const long delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        BasicPolynomial<Int> r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        r.divide_exact(g * detail::int_pow(h, static_cast<std::uint64_t>(delta)));
        b = std::move(r);
        g = a.leading();
        if (delta > 0) {
            h = detail::int_pow(g, static_cast<std::uint64_t>(delta)) /
                detail::int_pow(h, static_cast<std::uint64_t>(delta - 1));
        }
        if (b.degree() == 0) break;
    }
    const auto da = static_cast<std::uint64_t>(a.degree());
    h = detail::int_pow(b.leading(), da) / detail::int_pow(h, da - 1);
    return sign * scale * h;
}

}  // namespace tilekit
