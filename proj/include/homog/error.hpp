#pragma once

#include <stdexcept>
#include <string>

namespace homog {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Parameters outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_estimate, double achieved)
        : Error(what), best_estimate_(best_estimate), achieved_(achieved) {}
    [[nodiscard]] double best_estimate() const noexcept { return best_estimate_; }
    [[nodiscard]] double achieved_tolerance() const noexcept { return achieved_; }

private:
    double best_estimate_;
    double achieved_;
};

// Circulant embedding is not nonnegative definite.
class EmbeddingError : public Error {
public:
    using Error::Error;
};

// Quadratic variation vanished, so the ratio estimator is undefined.
class DegenerateEstimate : public Error {
public:
    using Error::Error;
};

// Trajectory left the divergence guard.
class DivergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw PreconditionError(msg);
}

}  // namespace homog
