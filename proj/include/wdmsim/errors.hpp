#pragma once

#include <stdexcept>

namespace wdmsim {

/// Rejected configuration file or parameter set. Mapped to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure during propagation or analysis (non-finite field, grid coverage
/// violation, ...). Mapped to CLI exit code 2.
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure while reading inputs or emitting result files. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wdmsim
