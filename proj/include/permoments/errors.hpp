#pragma once

#include <stdexcept>

namespace pm {

// Error families; the CLI maps each one to its own exit code.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace pm
