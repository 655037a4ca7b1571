#pragma once

#include <stdexcept>
#include <string>

namespace magicineq {

/// Base class for all library errors. A thrown error means "could not
/// check" (bad input, resource limit); it never encodes mathematical
/// falsity, which is reported through fail certificates instead.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the supported design range (e.g. |x| > 64 in exp).
class OutOfRangeError : public Error {
public:
    explicit OutOfRangeError(const std::string& msg) : Error(msg) {}
};

/// AGM requires strictly positive inputs.
class NonPositiveInputError : public Error {
public:
    explicit NonPositiveInputError(const std::string& msg) : Error(msg) {}
};

/// Series division needs a nonzero constant-rational leading coefficient.
class NonInvertibleLeadingCoefficientError : public Error {
public:
    explicit NonInvertibleLeadingCoefficientError(const std::string& msg) : Error(msg) {}
};

/// Half-period shift is only defined for constant-coefficient series.
class NonConstantCoefficientsError : public Error {
public:
    explicit NonConstantCoefficientsError(const std::string& msg) : Error(msg) {}
};

/// Tail-bound ratio rho >= 1; the truncation order must be increased.
class RhoNotLessThanOneError : public Error {
public:
    explicit RhoNotLessThanOneError(const std::string& msg) : Error(msg) {}
};

/// Axis evaluation was requested for a series without a usable majorant.
class MissingMajorantError : public Error {
public:
    explicit MissingMajorantError(const std::string& msg) : Error(msg) {}
};

/// Coefficient polynomial exceeded the fixed ring degree caps.
class DegreeOverflowError : public Error {
public:
    explicit DegreeOverflowError(const std::string& msg) : Error(msg) {}
};

/// A declared coefficient majorant failed verification against a stored
/// coefficient. Always a bug in the caller; never silently ignored.
class MajorantViolationError : public Error {
public:
    explicit MajorantViolationError(const std::string& msg) : Error(msg) {}
};

} // namespace magicineq
