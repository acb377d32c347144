#pragma once

#include <complex>

#include <Eigen/Dense>

namespace risamp {

using Complex = std::complex<double>;

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace risamp
