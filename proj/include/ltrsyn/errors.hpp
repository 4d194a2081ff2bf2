#pragma once

#include <stdexcept>
#include <string>

namespace ltr {

// Evaluation hit a pole / singular closed-loop point.
class SingularEvaluation : public std::runtime_error {
public:
    explicit SingularEvaluation(const std::string& what) : std::runtime_error(what) {}
};

// Numerical algorithm failed (root finding, Riccati solve, eigensolver).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Riccati-specific failure with a diagnostic of what went wrong.
class CareFailure : public NumericalError {
public:
    explicit CareFailure(const std::string& what) : NumericalError(what) {}
};

// Bad configuration file or field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ltr
