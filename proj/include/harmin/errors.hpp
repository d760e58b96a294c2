#pragma once

#include <stdexcept>
#include <string>

namespace harmin {

// Resource/enumeration guards (combinatorial blowups, step budgets).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration or serialized input.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Halfspace intersection has no point.
struct EmptyBodyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Halfspace intersection is unbounded (directions do not surround the origin).
struct UnboundedBodyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace harmin
