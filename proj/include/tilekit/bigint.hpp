#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tilekit {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt parse_bigint(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw std::invalid_argument("malformed integer literal");
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9')
            throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
    BigInt value(std::string(text.substr(i)));
    return text[0] == '-' ? BigInt(-value) : value;
}

inline std::string to_string(const BigInt& value) { return value.str(); }

inline BigInt ipow(BigInt base, std::uint64_t exponent) {
    BigInt result = 1;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

// Natural log of |value| for values that may not fit a double.
inline double log_abs(const BigInt& value) {
    BigInt v = abs(value);
    if (v == 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = msb(v) + 1;
    if (bits <= 1000) return std::log(v.convert_to<double>());
    const std::size_t drop = bits - 64;
    BigInt top = v >> drop;
    return std::log(top.convert_to<double>()) + static_cast<double>(drop) * std::log(2.0);
}

}  // namespace tilekit
