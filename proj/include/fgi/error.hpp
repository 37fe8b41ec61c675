#pragma once

#include <stdexcept>
#include <string>

namespace fgi {

/// Base of all library errors.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition was violated (bad modulus, non-invertible input, ...).
class MathError : public Error {
   public:
    using Error::Error;
};

/// A numeric computation cannot meet the requested tolerance at the given precision.
class PrecisionError : public Error {
   public:
    using Error::Error;
};

/// External data (unit or class-group documents) failed validation.
class InputError : public Error {
   public:
    using Error::Error;
};

/// The requested object lies outside what the library can compute.
class UnsupportedError : public Error {
   public:
    using Error::Error;
};

}  // namespace fgi
