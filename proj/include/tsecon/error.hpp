#pragma once

#include <stdexcept>
#include <string>

namespace tsecon {

/// Invalid arguments or configuration supplied by the caller.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or unusable input data (CSV contents, non-positive values for logs, short samples).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a result (rank deficiency, singular covariance).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tsecon
