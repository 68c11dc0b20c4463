#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace yab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration input. key() names the offending parameter (or the file path).
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& message)
        : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A DC-side pulse width would exceed half a switching period (|v_p| > 2 v_dc).
class OverModulationError : public Error {
public:
    using Error::Error;
};

/// A model invariant failed while running (e.g. CM cancellation, zero-mean current).
class ModelInvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace yab
