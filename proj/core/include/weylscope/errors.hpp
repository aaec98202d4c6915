#pragma once

#include <stdexcept>
#include <string>

namespace weylscope {

// Raised when an operation's preconditions are not met.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a run would exceed the configured term/memory budget.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when not enough data is available (e.g. < 3 usable scales).
struct insufficient_data : std::runtime_error {
    explicit insufficient_data(const std::string& what) : std::runtime_error(what) {}
};

} // namespace weylscope
