#pragma once

#include <stdexcept>
#include <string>

namespace climpanel {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Data validation (CLI exit code 2).
class DataError : public Error {
public:
    using Error::Error;
};

class SchemaError : public DataError {
public:
    using DataError::DataError;
};

class IntegrityError : public DataError {
public:
    using DataError::DataError;
};

class GapError : public DataError {
public:
    using DataError::DataError;
};

class DomainError : public DataError {
public:
    using DataError::DataError;
};

class LookupError : public DataError {
public:
    using DataError::DataError;
};

class EmptyPanelError : public DataError {
public:
    using DataError::DataError;
};

class EmptySummaryError : public DataError {
public:
    using DataError::DataError;
};

class DegenerateWeightError : public DataError {
public:
    using DataError::DataError;
};

class BurnInError : public DataError {
public:
    using DataError::DataError;
};

// Estimation failures (CLI exit code 3 when every cell fails).
class EstimationError : public Error {
public:
    using Error::Error;
};

class RankError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

class SampleError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

class BandwidthError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

class UnitRootError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

class DofError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

// Usage / configuration (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace climpanel
