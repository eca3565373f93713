#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

/// Raised for violated preconditions and malformed input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data that cannot be parsed or validated (maps to CLI exit code 4).
class InputError : public Error {
public:
    using Error::Error;
};

/// A budgeted search stopped before reaching a verdict (exit code 3).
class BudgetExhaustedError : public Error {
public:
    using Error::Error;
};

/// A step that the construction needs was shown impossible (exit code 2).
class RefutedError : public Error {
public:
    using Error::Error;
};

} // namespace sdc
