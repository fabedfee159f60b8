#pragma once

#include <stdexcept>
#include <string>

namespace sphereq {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroVector : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown by the direct coefficient formulas when a denominator falls under the
// guard threshold; carries the (1-based) component index so the caller can
// report it and fall back to the angle-space route.
struct SingularDenominator : std::runtime_error {
    SingularDenominator(int component, const std::string& what_arg)
        : std::runtime_error(what_arg), component_(component) {}
    int component() const noexcept { return component_; }

  private:
    int component_;
};

struct DivisionByZeroAmplitude : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidRadius : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InfeasibleRates : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedDistribution : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HorizonTooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptySamples : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what_arg)
        : std::runtime_error(what_arg), line_(line) {}
    int line() const noexcept { return line_; }

  private:
    int line_;
};

struct ValidationError : std::runtime_error {
    ValidationError(std::string key, const std::string& what_arg)
        : std::runtime_error(what_arg), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

}  // namespace sphereq
