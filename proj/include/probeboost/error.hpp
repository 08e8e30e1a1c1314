#pragma once

#include <stdexcept>
#include <string>

namespace probeboost {

// Invalid hyperparameters, flags or config files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input data that cannot be fit: bad shapes, non-finite values, unparsable
// cells, degenerate responses.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Logistic response without both classes; the loss-minimal offset is infinite.
class DegenerateResponseError : public DataError {
public:
    using DataError::DataError;
};

// Every candidate column has zero variance after centering.
class NoUsableCovariateError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace probeboost
