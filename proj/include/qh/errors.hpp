#pragma once

#include <stdexcept>
#include <string>

namespace qh {

// Base buckets. The CLI maps them onto exit codes:
// ConfigError -> 2, SolverError -> 3, DataError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct SolverError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};

// game_tree
struct CycleDetected : DataError {
    using DataError::DataError;
};
struct DanglingChild : DataError {
    using DataError::DataError;
};
struct PayoffArityMismatch : DataError {
    using DataError::DataError;
};
struct EmptyActions : DataError {
    using DataError::DataError;
};
struct InvalidPrior : DataError {
    using DataError::DataError;
};
struct MissingNodePolicy : DataError {
    using DataError::DataError;
};

// numeric / solver
struct LengthMismatch : DataError {
    using DataError::DataError;
};
struct NonFiniteUtility : SolverError {
    using SolverError::SolverError;
};
struct InvalidParams : ConfigError {
    using ConfigError::ConfigError;
};
struct NonFiniteBackup : SolverError {
    using SolverError::SolverError;
};
struct UnboundedDepth : SolverError {
    using SolverError::SolverError;
};

// games
struct CapacityOutOfRange : ConfigError {
    using ConfigError::ConfigError;
};
struct InvalidRejectionPayoffs : ConfigError {
    using ConfigError::ConfigError;
};
struct UnknownGameKey : ConfigError {
    using ConfigError::ConfigError;
};

// fitting / evaluation
struct EmptyObservations : DataError {
    using DataError::DataError;
};
struct ModelEvaluationFailure : SolverError {
    using SolverError::SolverError;
};
struct InsufficientData : DataError {
    using DataError::DataError;
};
struct NonFiniteError : DataError {
    using DataError::DataError;
};

}  // namespace qh
