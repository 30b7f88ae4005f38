#pragma once

#include <stdexcept>
#include <string>

namespace exc {

/// Base class for all library errors. Numerical failures and contract
/// violations derive from this so callers can catch one type at the CLI
/// boundary and map it to an exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Config-file or input-schema problems (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};
struct SchemaError : ConfigError {
    using ConfigError::ConfigError;
};

/// Numerical failures (CLI exit code 3).
struct NumericError : Error {
    using Error::Error;
};

struct DimensionMismatch : NumericError {
    using NumericError::NumericError;
};
struct NotPsd : NumericError {
    using NumericError::NumericError;
};
struct SingularSystem : NumericError {
    using NumericError::NumericError;
};
struct OffGridLocation : NumericError {
    using NumericError::NumericError;
};
struct DimensionCap : NumericError {
    using NumericError::NumericError;
};
struct GridTooLarge : NumericError {
    using NumericError::NumericError;
};
struct DegenerateExtent : NumericError {
    using NumericError::NumericError;
};
struct NegativeDistance : NumericError {
    using NumericError::NumericError;
};
struct RankDeficient : NumericError {
    using NumericError::NumericError;
};
struct InsufficientData : NumericError {
    using NumericError::NumericError;
};
struct FitDiverged : NumericError {
    using NumericError::NumericError;
};
struct SingularCovariance : NumericError {
    using NumericError::NumericError;
};
struct DegenerateTruth : NumericError {
    using NumericError::NumericError;
};

}  // namespace exc
