#pragma once

#include <stdexcept>
#include <string>

namespace dlflame {

/// Raised when a computation produces non-finite values or fails to converge
/// in a way the caller asked to treat as fatal.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for unparseable or inconsistent run configurations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dlflame
