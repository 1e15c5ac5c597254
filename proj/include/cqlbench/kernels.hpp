// kernels.hpp — OpenMP inner loops with serial reference twins
//
// Every parallel kernel has a *_serial twin that shares the same per-row
// kernel function, so the two produce bitwise-identical results for any
// thread count. Tests assert exact equality; the benchmark tool compares
// throughput.

#pragma once

#include <complex>
#include <cstddef>

namespace cql::kernels {

using Complex = std::complex<double>;

// c = a * b, row-major, (m x k) * (k x n)
void matmul(const Complex* a, const Complex* b, Complex* c,
            std::size_t m, std::size_t k, std::size_t n);
void matmul_serial(const Complex* a, const Complex* b, Complex* c,
                   std::size_t m, std::size_t k, std::size_t n);

// c = a^H * b, with a (k x m) row-major, result (m x n)
void adjoint_matmul(const Complex* a, const Complex* b, Complex* c,
                    std::size_t m, std::size_t k, std::size_t n);
void adjoint_matmul_serial(const Complex* a, const Complex* b, Complex* c,
                           std::size_t m, std::size_t k, std::size_t n);

// y = a * x, row-major (m x n)
void matvec(const Complex* a, const Complex* x, Complex* y,
            std::size_t m, std::size_t n);
void matvec_serial(const Complex* a, const Complex* x, Complex* y,
                   std::size_t m, std::size_t n);

// y = a^H * x, with a (m x n) row-major; y has length n
void adjoint_matvec(const Complex* a, const Complex* x, Complex* y,
                    std::size_t m, std::size_t n);
void adjoint_matvec_serial(const Complex* a, const Complex* x, Complex* y,
                           std::size_t m, std::size_t n);

// max_i |a_i - b_i| (max-reduction, order-independent)
double max_abs_diff(const Complex* a, const Complex* b, std::size_t n);

} // namespace cql::kernels
