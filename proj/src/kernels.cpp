// kernels.cpp — OpenMP kernels and their serial twins

#include "cqlbench/kernels.hpp"

#include <algorithm>

namespace cql::kernels {

namespace {

// Shared row kernels. noinline keeps codegen identical between the serial
// and OpenMP callers, which makes the two paths bitwise-equal.

__attribute__((noinline)) void mm_row(const Complex* arow, const Complex* b,
                                      Complex* crow, std::size_t k, std::size_t n) {
    std::fill(crow, crow + n, Complex(0.0, 0.0));
    for (std::size_t kk = 0; kk < k; ++kk) {
        const Complex aik = arow[kk];
        if (aik == Complex(0.0, 0.0)) continue;
        const Complex* brow = b + kk * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
}

// row i of c = a^H b: c(i,j) = sum_k conj(a(k,i)) b(k,j)
__attribute__((noinline)) void amm_row(const Complex* a, const Complex* b,
                                       Complex* crow, std::size_t i,
                                       std::size_t m, std::size_t k, std::size_t n) {
    std::fill(crow, crow + n, Complex(0.0, 0.0));
    for (std::size_t kk = 0; kk < k; ++kk) {
        const Complex aki = std::conj(a[kk * m + i]);
        if (aki == Complex(0.0, 0.0)) continue;
        const Complex* brow = b + kk * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += aki * brow[j];
    }
}

__attribute__((noinline)) Complex mv_row(const Complex* arow, const Complex* x,
                                         std::size_t n) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) acc += arow[j] * x[j];
    return acc;
}

__attribute__((noinline)) Complex amv_col(const Complex* a, const Complex* x,
                                          std::size_t i, std::size_t m, std::size_t n) {
    Complex acc(0.0, 0.0);
    for (std::size_t kk = 0; kk < m; ++kk) acc += std::conj(a[kk * n + i]) * x[kk];
    return acc;
}

} // namespace

void matmul(const Complex* a, const Complex* b, Complex* c,
            std::size_t m, std::size_t k, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
        mm_row(a + static_cast<std::size_t>(i) * k, b,
               c + static_cast<std::size_t>(i) * n, k, n);
}

void matmul_serial(const Complex* a, const Complex* b, Complex* c,
                   std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) mm_row(a + i * k, b, c + i * n, k, n);
}

void adjoint_matmul(const Complex* a, const Complex* b, Complex* c,
                    std::size_t m, std::size_t k, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
        amm_row(a, b, c + static_cast<std::size_t>(i) * n,
                static_cast<std::size_t>(i), m, k, n);
}

void adjoint_matmul_serial(const Complex* a, const Complex* b, Complex* c,
                           std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) amm_row(a, b, c + i * n, i, m, k, n);
}

void matvec(const Complex* a, const Complex* x, Complex* y,
            std::size_t m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
        y[i] = mv_row(a + static_cast<std::size_t>(i) * n, x, n);
}

void matvec_serial(const Complex* a, const Complex* x, Complex* y,
                   std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) y[i] = mv_row(a + i * n, x, n);
}

void adjoint_matvec(const Complex* a, const Complex* x, Complex* y,
                    std::size_t m, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        y[i] = amv_col(a, x, static_cast<std::size_t>(i), m, n);
}

void adjoint_matvec_serial(const Complex* a, const Complex* x, Complex* y,
                           std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = amv_col(a, x, i, m, n);
}

double max_abs_diff(const Complex* a, const Complex* b, std::size_t n) {
    double mx = 0.0;
#pragma omp parallel for schedule(static) reduction(max : mx)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
}

} // namespace cql::kernels
