#pragma once

#include <stdexcept>
#include <string>

namespace windpower {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Too few (non-NA) values to compute the requested quantity.
class InsufficientData : public Error {
public:
  using Error::Error;
};

/// The input carries no variation where variation is required.
class DegenerateSeries : public Error {
public:
  using Error::Error;
};

/// Requested size exceeds a hard capacity limit.
class CapacityExceeded : public Error {
public:
  using Error::Error;
};

/// Fewer usable scales than a scaling fit requires.
class InsufficientScales : public Error {
public:
  using Error::Error;
};

/// Malformed or inconsistent input data (ingestion, schema violations).
class DataError : public Error {
public:
  using Error::Error;
};

/// Unusable run configuration (bad paths, missing mandatory options).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace windpower
