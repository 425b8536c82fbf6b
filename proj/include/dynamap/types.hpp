// types.hpp — shared aliases and error types
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dynamap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Configuration / input errors (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures: quadrature non-convergence, ODE step underflow, ...
// (CLI exit code 4).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepSizeUnderflow : NumericalError {
    double time;
    explicit StepSizeUnderflow(double t)
        : NumericalError("step size underflow at t = " + std::to_string(t)), time(t) {}
};

// Raised when a map's d^2 x d^2 representation is not diagonalizable within
// tolerance.
struct DefectiveMapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised where a time-local generator does not exist (|G(t)| below floor for
// the amplitude-damping family).
struct SingularGeneratorError : std::runtime_error {
    double time;
    explicit SingularGeneratorError(double t)
        : std::runtime_error("singular generator at t = " + std::to_string(t)), time(t) {}
};

// Raised by divisor extraction when |det F(s)| is below floor.
struct NonInvertibleFrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by constructions that only support certain dimensions (prime-d MUBs).
struct UnsupportedDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace dynamap
