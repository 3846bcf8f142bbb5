#pragma once

#include <stdexcept>

namespace evblur {

// File/stream-format failures (missing files, bad magic, truncated data).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite values where the algorithm requires finite ones.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace evblur
