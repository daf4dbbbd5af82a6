#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace srbb {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Integer power of two for small non-negative exponents.
inline std::int64_t pow2(int e) { return std::int64_t{1} << e; }

/// Identity of order d.
inline Matrix identity(std::int64_t d) { return Matrix::Identity(d, d); }

}  // namespace srbb
