#pragma once

#include <stdexcept>
#include <string>

namespace sxo {

// Invalid parameter value (wrong sign, odd order where even is required, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter is meaningful but outside what this implementation supports.
class CapabilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested tolerance could not be met.
class AccuracyError : public std::runtime_error {
public:
    explicit AccuracyError(const std::string& what, double achieved = -1.0)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

// A grid or scan window failed to capture the quantity of interest.
class WindowError : public AccuracyError {
public:
    using AccuracyError::AccuracyError;
};

// Input data violates a structural requirement (negative density, broken monotonicity, ...).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sxo
