#pragma once

#include <stdexcept>

namespace vmdcvm {

/// Invalid configuration value (bad K, window, tolerance, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be processed: wrong length, non-finite samples,
/// malformed files.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical stage produced an unusable result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vmdcvm
