#pragma once

#include <stdexcept>
#include <string>

namespace tilekit {

// Zero divisors, empty multisets and other precondition failures are reported
// as std::domain_error. The two types below mark the remaining failure classes.

/// A polynomial division that was required to be exact left a remainder.
class divisibility_error : public std::runtime_error {
public:
    explicit divisibility_error(const std::string& what) : std::runtime_error(what) {}
};

/// An (A, t, B) triple failed an internal consistency check, e.g. the reduced
/// denominator of B's generating function is not a product of cyclotomic factors.
class integrity_error : public std::logic_error {
public:
    explicit integrity_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tilekit
