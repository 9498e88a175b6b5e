#pragma once

#include <complex>

#include <Eigen/Dense>

namespace pbom {

using Real = double;

template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <class Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <class Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <class Scalar>
using Vec6 = Eigen::Matrix<Scalar, 6, 1>;

template <class Scalar>
using CMat4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <class Scalar>
using CMat6 = Eigen::Matrix<std::complex<Scalar>, 6, 6>;
template <class Scalar>
using CVec4 = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
template <class Scalar>
using CVec6 = Eigen::Matrix<std::complex<Scalar>, 6, 1>;

// Quadrature ordering used throughout: u = (X, P, x, p).
// X, P are the cavity (Bogoliubov-mode) quadratures, x, p the mechanical ones.

}  // namespace pbom
