#pragma once

#include <stdexcept>
#include <string>

namespace bihk {

// Mathematical precondition failure (degenerate input, chart boundary, ...).
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad shapes, unknown names, parse errors.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace bihk
