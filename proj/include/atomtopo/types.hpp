#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace atomtopo {

using cd = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;
using Mat3c = Eigen::Matrix3cd;
using Mat4c = Eigen::Matrix4cd;
using VecXc = Eigen::VectorXcd;
using MatXc = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cd I{0.0, 1.0};

// Bad input (negative lengths, zero separation, unknown options).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A reciprocal vector sits exactly on the light circle |q| = k.
struct LightCircleError : DomainError {
    using DomainError::DomainError;
};

// Sums, grids or fits that did not reach the requested accuracy.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed run configuration (mapped to exit code 2 by the CLI).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace atomtopo
