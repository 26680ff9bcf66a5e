#pragma once

#include <stdexcept>
#include <string>

namespace mltc {

// Error taxonomy mirrored by the CLI exit codes:
//   ConfigError -> 2, DataError -> 3, InternalError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad flags, bad hyperparameters, inconsistent experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent input files, dimension mismatches at the data
// boundary, unreadable models.
struct DataError : Error {
    using Error::Error;
};

// A violated internal invariant. Reaching this is a bug, not user error.
struct InternalError : Error {
    using Error::Error;
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw InternalError("internal invariant violated: " + what);
}

}  // namespace mltc
