#pragma once

#include <stdexcept>
#include <string>

namespace ppd {

// A requested computation exceeds a configured resource bound (sieve
// capacity, factoring effort budget, group element cap, ...).  The caller
// should retry with smaller bounds.  CLI exit code 3.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed: a value that is provably impossible was
// produced.  Indicates a bug, never bad user input.  CLI exit code 4.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ppd
