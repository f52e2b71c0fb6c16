#pragma once

#include <complex>

#include <Eigen/Dense>

namespace entb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double norm = 1e-9;
inline constexpr double psd = 1e-8;
inline constexpr double detect = 1e-9;
inline constexpr double orthonormal = 1e-10;
inline constexpr double completeness = 1e-9;
inline constexpr double imaginary_residue = 1e-10;
}  // namespace tol

// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// max |a - a^dagger| over entries.
double hermiticity_error(const ComplexMatrix& a);

}  // namespace entb
