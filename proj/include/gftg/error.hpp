#pragma once

#include <stdexcept>
#include <string>

namespace gftg {

/// Invalid or inconsistent configuration (bad order, grid mismatch, unknown key).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a finite answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing files failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gftg
