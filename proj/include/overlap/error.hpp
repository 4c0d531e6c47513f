#pragma once

#include <stdexcept>
#include <string>

namespace overlap {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input values: non-finite coordinates, empty sets, out-of-range parameters,
// unparsable files.
class InputError : public Error {
public:
    using Error::Error;
};

// Two inputs that must agree in dimension (or norm) do not.
class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

// A persisted file is missing required fields or carries an unknown version.
class FormatError : public InputError {
public:
    using InputError::InputError;
};

// Every support point sits at the origin, so the radius normalizer is zero.
class DegenerateDomain : public Error {
public:
    using Error::Error;
};

// A ranking metric was requested on data that cannot define it (single class).
class MetricUndefined : public Error {
public:
    using Error::Error;
};

}  // namespace overlap
