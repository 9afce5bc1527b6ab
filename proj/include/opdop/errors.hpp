#ifndef OPDOP_ERRORS_HPP
#define OPDOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opdop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: malformed JSON, bad parameters, empty ranges.
class SpecError : public Error {
public:
    using Error::Error;
};

/// A mathematical step could not be completed. The CLI maps these to exit code 2.
class MathError : public Error {
public:
    using Error::Error;
};

class NonDivisible : public MathError {
public:
    using MathError::MathError;
};

class NotPositiveDefinite : public MathError {
public:
    using MathError::MathError;
};

class NotInterpolating : public MathError {
public:
    using MathError::MathError;
};

class WrongPointCount : public MathError {
public:
    using MathError::MathError;
};

class TailViolation : public MathError {
public:
    using MathError::MathError;
};

class ExpansionMismatch : public MathError {
public:
    using MathError::MathError;
};

class QuadratureError : public MathError {
public:
    using MathError::MathError;
};

class NonConvergence : public MathError {
public:
    using MathError::MathError;
};

} // namespace opdop

#endif // OPDOP_ERRORS_HPP
