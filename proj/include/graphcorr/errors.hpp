#pragma once

#include <stdexcept>

namespace graphcorr {

// Structural problems: mismatched shapes, unknown labels, duplicate ids.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure at the requested tolerance (singular matrix, deficient span).
class SingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A presentation or morphism that fails mathematical validation was handed to
// an operation that requires a valid one.
class PresentationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or schema-violating document text.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace graphcorr
