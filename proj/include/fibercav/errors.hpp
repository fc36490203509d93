#pragma once

#include <stdexcept>
#include <string>

namespace fibercav {

// Thrown when a root bracket, quadrature, or series fails to converge, or
// when input parameters put a solver outside its valid region.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by the delay integrator for step-size or history violations.
struct IntegratorError : std::runtime_error {
    explicit IntegratorError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown during configuration validation; the message names the bad field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fibercav
