#pragma once

#include <stdexcept>
#include <string>

namespace qincon {

// Command line / selector grammar problems.  CLI maps these to exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// A theorem hypothesis that the requested input does not satisfy (e.g. the
// Legendre precondition of the mock sieve).  CLI maps these to exit code 3.
struct PreconditionNotMet : std::runtime_error {
    explicit PreconditionNotMet(const std::string& msg) : std::runtime_error(msg) {}
};

// Coefficient cache I/O problems (malformed file, version conflicts, ...).
struct StoreError : std::runtime_error {
    explicit StoreError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qincon
