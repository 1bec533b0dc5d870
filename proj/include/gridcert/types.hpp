#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gridcert {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Base for every error raised by the library. Callers that only need a
// message catch this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix norm pairing used by the fixed-point certificates:
// two   -> max-row Euclidean matrix norm with the vector 2-norm,
// inf   -> max-entry matrix norm with the vector 1-norm.
enum class Norm { two, inf };

std::string to_string(Norm norm);

}  // namespace gridcert
