#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace laclab {

/// Bad arguments or malformed specs (CLI exit code 2).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Rejected or unreadable input data (CLI exit code 4).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A sequence prefix ran out before the requested construction finished.
struct InsufficientPrefix : DataError {
    InsufficientPrefix(const std::string& what, std::int64_t achieved_count)
        : DataError(what), achieved(achieved_count) {}
    std::int64_t achieved;
};

}  // namespace laclab
