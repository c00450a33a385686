#pragma once

#include <stdexcept>
#include <string>

namespace kzent {

/// Evaluation of a critical scaling law exactly at the critical point.
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Argument outside the domain of a closed-form expression (e.g. zero field).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The ring cannot be tiled by domains close to the frozen correlation length.
class PartitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver or step controller failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or model configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kzent
