#pragma once

#include <stdexcept>
#include <string>

namespace spurious {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition or type invariant.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The design matrix does not have full column rank.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Not enough observations for the number of estimated coefficients.
class DegreesOfFreedomError : public Error {
public:
    using Error::Error;
};

/// A statistic is undefined for the supplied data (zero variance, zero denominator).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Too many simulated draws had to be rejected for numerical reasons.
class NumericalQualityError : public Error {
public:
    using Error::Error;
};

/// A data file or configuration document could not be read.
class LoadError : public Error {
public:
    using Error::Error;
};

}  // namespace spurious
