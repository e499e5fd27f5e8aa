#pragma once

#include <stdexcept>
#include <string>

namespace heraldkit {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Basis or permanent size above the configured bound.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A reconstruction failed its hard validation gate.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnachievableTargetError : std::runtime_error {
    UnachievableTargetError(const std::string& msg, double lo, double hi)
        : std::runtime_error(msg), attainable_lo(lo), attainable_hi(hi) {}
    double attainable_lo;
    double attainable_hi;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace heraldkit
