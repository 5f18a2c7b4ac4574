#pragma once

#include <stdexcept>
#include <string>

namespace permword {

/// Raised when a randomized search runs out of its attempt budget.
///
/// Precondition violations use std::invalid_argument; this type is reserved
/// for searches whose failure is expected with small probability (long-cycle
/// search, conditioned walks, relocation, congruence solving).
class retry_exhausted : public std::runtime_error {
public:
    explicit retry_exhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Dense (table-based) mode requested for a group that is too large.
class too_large : public std::invalid_argument {
public:
    explicit too_large(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace permword
