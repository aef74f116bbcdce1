#pragma once

#include <stdexcept>
#include <string>

namespace fkb {

// Error taxonomy used by the CLI to pick exit codes.

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

struct RangeError : std::invalid_argument {
    explicit RangeError(const std::string& m) : std::invalid_argument(m) {}
};

// A value that should have been an algebraic integer was not: means the
// normalization or the evaluation engine is broken, never bad user input.
struct IntegralityError : std::runtime_error {
    explicit IntegralityError(const std::string& m) : std::runtime_error(m) {}
};

// Resource guard (frontier cap) tripped.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace fkb
