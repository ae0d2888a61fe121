#pragma once

#include <stdexcept>
#include <string>

namespace mnc {

// Malformed input: out-of-range index, dimension mismatch, bad schema.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Desk-scale guard tripped (too many chambers, cells, ...).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Two routes that must agree disagreed, or a constructive proof step failed
// to verify. Always a bug, never a tolerated approximation.
struct InternalConsistencyError : std::logic_error {
    explicit InternalConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mnc
