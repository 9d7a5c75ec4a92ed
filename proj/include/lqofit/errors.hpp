#pragma once

#include <stdexcept>
#include <string>

namespace lqofit {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: files, shapes, duplicate points, bad indices.
class DataError : public Error {
  public:
    using Error::Error;
};

/// Failure of a numerical operation: singular shifts, vanishing denominators, overflow.
class NumericalError : public Error {
  public:
    using Error::Error;
};

class ParseError : public DataError {
  public:
    using DataError::DataError;
};

class DimensionMismatch : public DataError {
  public:
    using DataError::DataError;
};

class GridMismatch : public DataError {
  public:
    using DataError::DataError;
};

class DuplicatePoints : public DataError {
  public:
    using DataError::DataError;
};

class IoError : public DataError {
  public:
    using DataError::DataError;
};

class InsufficientData : public DataError {
  public:
    using DataError::DataError;
};

/// A frequency shift sI - A (or zI - A) is numerically singular, i.e. the
/// evaluation point sits on a pole of the transfer function.
class SingularShift : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// The barycentric denominator vanished at a non-support point.
class ZeroDenominator : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// State trajectory left the representable range during simulation.
class NonFiniteState : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// A least-squares solve returned an exactly zero barycentric weight.
class ZeroWeight : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// No sample points remain outside the support set.
class EmptyRemainder : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

} // namespace lqofit
