#pragma once

#include <stdexcept>
#include <string>

namespace bmo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition was violated (bad prime, zero argument, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The Newton condition v(f(a)) > 2 v(f'(a)) does not hold.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// Inputs do not carry enough p-adic digits to decide the question.
class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

/// A local-point search hit its node budget without a verdict.
class InconclusivePrecision : public Error {
public:
    using Error::Error;
};

/// A curve has no point over a local field.
class NoLocalPoint : public Error {
public:
    using Error::Error;
};

/// The radicand of a cubic Kummer extension is already a cube.
class DegenerateExtension : public Error {
public:
    using Error::Error;
};

/// A representation N0 = A^4 + 16 B^4 (or p = a^2 + 16 b^2) was expected but not found.
class RepresentationNotFound : public Error {
public:
    using Error::Error;
};

/// No class survives the pairing conditions of the survival analysis.
class NoWitness : public Error {
public:
    using Error::Error;
};

}  // namespace bmo
