#pragma once

#include <stdexcept>
#include <string>

namespace phmarket {

/// Numeric failure carrying the abscissa where the integrand/objective
/// produced a non-finite value.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& msg, double abscissa)
        : std::runtime_error(msg), abscissa_(abscissa) {}
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// Root bracketing failed: f(lo) and f(hi) have the same sign.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed-point / iterative solve did not converge; carries the last two
/// iterates for diagnosis.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double last, double previous)
        : std::runtime_error(msg), last_(last), previous_(previous) {}
    double last() const noexcept { return last_; }
    double previous() const noexcept { return previous_; }

private:
    double last_;
    double previous_;
};

/// Market shape not supported by the requested operation (e.g. a
/// single-type query against a multi-type market).
class UnsupportedMarketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Market parameters violate a structural invariant (ordering, signs).
class InvalidMarketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No feasible price exists (reservation utility above the roaming fee).
class InfeasibleMarketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Experiment configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace phmarket
