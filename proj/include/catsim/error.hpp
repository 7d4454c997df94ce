#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

/// Invalid arguments or malformed configuration.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field)) {}
    explicit ConfigError(const std::string& message) : ConfigError("", message) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A simulation invariant (norm, cleared workspace) was violated at runtime.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace catsim
