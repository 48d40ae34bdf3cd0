#pragma once

#include <stdexcept>
#include <string>

namespace grk {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text/JSON, shape or modulus mismatch, bad parameters.
class InputError : public Error {
public:
    using Error::Error;
};

// A configured enumeration or search cap would be exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// A certified decision could not be reached within the caps.
class Undecided : public CapExceeded {
public:
    using CapExceeded::CapExceeded;
};

// The operation is not defined for this input (tau of a projective, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace grk
