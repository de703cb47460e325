#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phaselab {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

constexpr double kPi = 3.14159265358979323846;
inline const cplx I_(0.0, 1.0);

// Thrown for violated preconditions; the message names the failing invariant.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Vec to_complex(const RVec& v) { return v.cast<cplx>(); }

}  // namespace phaselab
