#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace ebvp {

using Real = double;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Raised for any malformed input that a config file could produce; the CLI maps
// it to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace ebvp
