#pragma once

#include <array>
#include <complex>

#include "entanglecert/errors.hpp"

namespace entanglecert {

using Complex = std::complex<double>;

/// 2x2 complex matrix, row-major. Hosts single-qubit operators.
struct Mat2 {
    std::array<Complex, 4> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

    Mat2 adjoint() const;
    Complex trace() const { return e[0] + e[3]; }
    bool is_hermitian(double tol) const;
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, const Mat2& a);
Mat2 operator*(double s, const Mat2& a);

Mat2 identity2();
Mat2 zero2();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// 4x4 complex matrix, row-major. Hosts two-qubit operators (Alice = left
/// tensor factor, Bob = right).
struct Mat4 {
    std::array<Complex, 16> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

    Mat4 adjoint() const;
    Complex trace() const { return e[0] + e[5] + e[10] + e[15]; }
    Mat4 conj() const;
    bool is_hermitian(double tol) const;
};

Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator*(Complex s, const Mat4& a);
Mat4 operator*(double s, const Mat4& a);

Mat4 identity4();
Mat4 zero4();

/// Largest |a_ij - b_ij| over all entries.
double max_abs_diff(const Mat2& a, const Mat2& b);
double max_abs_diff(const Mat4& a, const Mat4& b);

/// Kronecker product with `a` (Alice) as the left factor.
Mat4 tensor_product(const Mat2& a, const Mat2& b);

/// Eigendecomposition of a 4x4 Hermitian matrix.
struct EigenSystem {
    std::array<double, 4> values;  ///< real eigenvalues, sorted descending
    Mat4 vectors;                  ///< column k is the unit eigenvector of values[k]
};

/// Cyclic Jacobi diagonalization. Throws NonHermitianInput if the input
/// deviates from Hermiticity by more than 1e-10 in any entry.
EigenSystem hermitian_eigensystem(const Mat4& m);

/// Positive-semidefinite square root via the eigensystem. Eigenvalues in
/// [-1e-9, 0) are clamped to zero; anything more negative throws OutOfRange.
Mat4 hermitian_sqrt(const Mat4& m);

}  // namespace entanglecert
