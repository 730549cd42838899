#pragma once

#include <stdexcept>
#include <string>

namespace ampcoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a mathematical precondition (non-normalized state,
/// non-PSD matrix, mismatched dimensions, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A scenario specification violates one of its invariants.
class InvalidScenario : public Error {
public:
    using Error::Error;
};

}  // namespace ampcoh
