// linalg.hpp — Dense complex operator substrate: small operator builders,
// tensor products, Hermitian exponentials, expectation values and norms.
//
// Storage is row-major throughout (matches the kernels). Index convention
// for joint spaces: atom index slow, field mode indices fast, first-listed
// mode slower than the second.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "cqlbench/config.hpp"

namespace cql::ops {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Complex kI = Complex(0.0, 1.0);

// --------------------------- small builders ---------------------------------

Matrix identity(std::size_t n);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// |i><j| in an n-dimensional space
Matrix basis_op(std::size_t n, std::size_t i, std::size_t j);

// a |n> = sqrt(n) |n-1>
Matrix lowering(std::size_t n);
Matrix raising(std::size_t n);
Matrix number_op(std::size_t n);

// Susskind-Glogower lowering "exponential of phase": sum_n |n><n+1|
Matrix sg_lowering(std::size_t n);

Vector basis_ket(std::size_t n, std::size_t i);
Vector ket_plus_y();  // (|0> + i|1>)/sqrt(2)
Vector ket_plus_x();
Vector ket_minus_x();

// --------------------------- checks and norms -------------------------------

double max_abs(const Matrix& a);
double hermiticity_error(const Matrix& a);              // max |a_ij - conj(a_ji)|
bool is_hermitian(const Matrix& a, double tol = 1e-12);
double unitarity_error(const Matrix& u);                // ||U^H U - I||_max

// --------------------------- core operations --------------------------------

// Kronecker product, first factor slow. Throws capacity_error when the
// result dimension exceeds the joint-dimension cap.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

// Product via the OpenMP kernel.
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix adjoint_multiply(const Matrix& a, const Matrix& b);  // a^H * b
Vector apply(const Matrix& a, const Vector& x);
Vector apply_adjoint(const Matrix& a, const Vector& x);     // a^H * x

// exp(-i * scale * h) by eigendecomposition. h must pass the Hermitian
// contract (tolerance 1e-12) and the operator dimension cap.
Matrix herm_expm(const Matrix& h, double scale);

// <psi| op |psi>; psi must be normalized and dimensions must match.
Complex expectation(const Matrix& op, const Vector& psi);

// <op^2> - <op>^2 for Hermitian op, clamped to 0 when within -1e-12.
double variance(const Matrix& op, const Vector& psi);

// ||ab - ba||_max
double commutator_norm(const Matrix& a, const Matrix& b);

} // namespace cql::ops
