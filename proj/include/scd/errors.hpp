#pragma once

#include <stdexcept>
#include <string>

namespace scd {

// Rejected inputs and violated call contracts. The CLI maps these to exit code 2.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical breakdown (failed decomposition, non-convergence). CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A predicted clustering with fewer distinct clusters than the reference labeling.
class DegeneratePartitionError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

} // namespace scd
