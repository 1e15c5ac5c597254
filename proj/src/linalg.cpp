// linalg.cpp — operator substrate implementation

#include "cqlbench/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cqlbench/kernels.hpp"

namespace cql {

std::size_t max_state_dim() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("CQLBENCH_MAX_DIM")) {
            const long long v = std::atoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return kDefaultMaxStateDim;
    }();
    return cap;
}

} // namespace cql

namespace cql::ops {

// --------------------------- small builders ---------------------------------

Matrix identity(std::size_t n) {
    return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix basis_op(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) throw std::out_of_range("basis_op: index out of range");
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return m;
}

Matrix lowering(std::size_t n) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 1; k < n; ++k)
        m(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) =
            std::sqrt(static_cast<double>(k));
    return m;
}

Matrix raising(std::size_t n) { return lowering(n).adjoint(); }

Matrix number_op(std::size_t n) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = static_cast<double>(k);
    return m;
}

Matrix sg_lowering(std::size_t n) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k + 1 < n; ++k)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = 1.0;
    return m;
}

Vector basis_ket(std::size_t n, std::size_t i) {
    if (i >= n) throw std::out_of_range("basis_ket: index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

Vector ket_plus_y() {
    Vector v(2);
    v << Complex(1.0, 0.0), Complex(0.0, 1.0);
    return v / std::sqrt(2.0);
}

Vector ket_plus_x() {
    Vector v(2);
    v << 1.0, 1.0;
    return v / std::sqrt(2.0);
}

Vector ket_minus_x() {
    Vector v(2);
    v << 1.0, -1.0;
    return v / std::sqrt(2.0);
}

// --------------------------- checks and norms -------------------------------

double max_abs(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_error(const Matrix& a) {
    return max_abs(Matrix(a - a.adjoint()));
}

bool is_hermitian(const Matrix& a, double tol) {
    return a.rows() == a.cols() && hermiticity_error(a) <= tol;
}

double unitarity_error(const Matrix& u) {
    Matrix g = adjoint_multiply(u, u);
    g -= identity(static_cast<std::size_t>(u.cols()));
    return max_abs(g);
}

// --------------------------- core operations --------------------------------

Vector tensor(const Vector& a, const Vector& b) {
    const std::size_t na = static_cast<std::size_t>(a.size());
    const std::size_t nb = static_cast<std::size_t>(b.size());
    if (na * nb > max_state_dim())
        throw capacity_error("tensor: joint dimension " + std::to_string(na * nb) +
                             " exceeds cap " + std::to_string(max_state_dim()));
    Vector out(static_cast<Eigen::Index>(na * nb));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            out(static_cast<Eigen::Index>(i * nb + j)) =
                a(static_cast<Eigen::Index>(i)) * b(static_cast<Eigen::Index>(j));
    return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw std::invalid_argument("tensor: factors must be square");
    const std::size_t na = static_cast<std::size_t>(a.rows());
    const std::size_t nb = static_cast<std::size_t>(b.rows());
    if (na * nb > max_state_dim())
        throw capacity_error("tensor: joint dimension " + std::to_string(na * nb) +
                             " exceeds cap " + std::to_string(max_state_dim()));
    Matrix out(static_cast<Eigen::Index>(na * nb), static_cast<Eigen::Index>(na * nb));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out.block(static_cast<Eigen::Index>(i * nb), static_cast<Eigen::Index>(j * nb),
                      static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb)) = aij * b;
        }
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    kernels::matmul(a.data(), b.data(), c.data(), static_cast<std::size_t>(a.rows()),
                    static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()));
    return c;
}

Matrix adjoint_multiply(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("adjoint_multiply: dimension mismatch");
    Matrix c(a.cols(), b.cols());
    kernels::adjoint_matmul(a.data(), b.data(), c.data(), static_cast<std::size_t>(a.cols()),
                            static_cast<std::size_t>(a.rows()),
                            static_cast<std::size_t>(b.cols()));
    return c;
}

Vector apply(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("apply: dimension mismatch");
    Vector y(a.rows());
    kernels::matvec(a.data(), x.data(), y.data(), static_cast<std::size_t>(a.rows()),
                    static_cast<std::size_t>(a.cols()));
    return y;
}

Vector apply_adjoint(const Matrix& a, const Vector& x) {
    if (a.rows() != x.size()) throw std::invalid_argument("apply_adjoint: dimension mismatch");
    Vector y(a.cols());
    kernels::adjoint_matvec(a.data(), x.data(), y.data(), static_cast<std::size_t>(a.rows()),
                            static_cast<std::size_t>(a.cols()));
    return y;
}

Matrix herm_expm(const Matrix& h, double scale) {
    if (h.rows() != h.cols()) throw std::invalid_argument("herm_expm: matrix must be square");
    const std::size_t n = static_cast<std::size_t>(h.rows());
    if (n > kMaxOperatorDim)
        throw capacity_error("herm_expm: dimension " + std::to_string(n) +
                             " exceeds operator cap " + std::to_string(kMaxOperatorDim));
    const double herr = hermiticity_error(h);
    if (herr > 1e-12)
        throw std::invalid_argument("herm_expm: input not Hermitian (asymmetry " +
                                    std::to_string(herr) + ")");

    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("herm_expm: eigensolve failed");

    // U = V diag(exp(-i*scale*lambda)) V^H
    Matrix v = es.eigenvectors();
    Matrix scaled = v;
    for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
        const Complex ph = std::exp(Complex(0.0, -scale * es.eigenvalues()(j)));
        scaled.col(j) *= ph;
    }
    Matrix vh = v.adjoint();
    return multiply(scaled, vh);
}

Complex expectation(const Matrix& op, const Vector& psi) {
    if (op.cols() != psi.size()) throw std::invalid_argument("expectation: dimension mismatch");
    const Vector opsi = apply(op, psi);
    return psi.dot(opsi);  // conjugates psi
}

double variance(const Matrix& op, const Vector& psi) {
    if (op.cols() != psi.size()) throw std::invalid_argument("variance: dimension mismatch");
    if (!is_hermitian(op)) throw std::invalid_argument("variance: operator must be Hermitian");
    const Vector opsi = apply(op, psi);
    const double m2 = opsi.squaredNorm();
    const double m1 = psi.dot(opsi).real();
    double var = m2 - m1 * m1;
    if (var < 0.0) {
        if (var < -1e-12) throw std::runtime_error("variance: negative beyond tolerance");
        var = 0.0;
    }
    return var;
}

double commutator_norm(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    Matrix ab = multiply(a, b);
    Matrix ba = multiply(b, a);
    return kernels::max_abs_diff(ab.data(), ba.data(), static_cast<std::size_t>(ab.size()));
}

} // namespace cql::ops
