#include "entanglecert/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace entanglecert {

namespace {

constexpr double kHermitianTol = 1e-10;

}  // namespace

Mat2 Mat2::adjoint() const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

bool Mat2::is_hermitian(double tol) const {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 2; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat2 operator*(Complex s, const Mat2& a) {
    Mat2 r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
    return r;
}

Mat2 operator*(double s, const Mat2& a) { return Complex(s, 0.0) * a; }

Mat2 identity2() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
}

Mat2 zero2() { return Mat2{}; }

Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Mat4 Mat4::adjoint() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Mat4 Mat4::conj() const {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = std::conj(e[i]);
    return r;
}

bool Mat4::is_hermitian(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 operator*(Complex s, const Mat4& a) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = s * a.e[i];
    return r;
}

Mat4 operator*(double s, const Mat4& a) { return Complex(s, 0.0) * a; }

Mat4 identity4() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Mat4 zero4() { return Mat4{}; }

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

Mat4 tensor_product(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

namespace {

// One complex Jacobi rotation zeroing a(p,q). The 2x2 block is reduced to a
// real symmetric one by the phase of a(p,q); the rotation angle picks the
// smaller root for stability.
void jacobi_rotate(Mat4& a, Mat4& v, int p, int q) {
    const Complex g = a(p, q);
    const double mag = std::abs(g);
    if (mag == 0.0) return;

    const Complex phase = g / mag;
    const double alpha = a(p, p).real();
    const double beta = a(q, q).real();
    const double tau = (alpha - beta) / (2.0 * mag);

    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Block unitary U = [[phase*c, -phase*s], [s, c]] acting on columns p, q.
    const Complex upp = phase * c;
    const Complex upq = -phase * s;
    const Complex uqp = Complex(s, 0.0);
    const Complex uqq = Complex(c, 0.0);

    for (int k = 0; k < 4; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * upp + akq * uqp;
        a(k, q) = akp * upq + akq * uqq;
    }
    for (int k = 0; k < 4; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);

    for (int k = 0; k < 4; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * upp + vkq * uqp;
        v(k, q) = vkp * upq + vkq * uqq;
    }
}

double off_diagonal_norm(const Mat4& a) {
    double s = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const Mat4& m) {
    if (!m.is_hermitian(kHermitianTol))
        throw NonHermitianInput("hermitian_eigensystem: input is not Hermitian within 1e-10");

    // Symmetrize away the sub-tolerance asymmetry before iterating.
    Mat4 a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    Mat4 v = identity4();
    double scale = 0.0;
    for (const auto& x : a.e) scale = std::max(scale, std::abs(x));
    const double stop = std::max(scale, 1e-300) * 1e-15;

    for (int sweep = 0; sweep < 64 && off_diagonal_norm(a) > stop; ++sweep)
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) jacobi_rotate(a, v, p, q);

    EigenSystem sys;
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> vals{};
    for (int i = 0; i < 4; ++i) vals[static_cast<std::size_t>(i)] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(j)]; });
    for (int i = 0; i < 4; ++i) {
        sys.values[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        for (int k = 0; k < 4; ++k) sys.vectors(k, i) = v(k, order[static_cast<std::size_t>(i)]);
    }
    return sys;
}

Mat4 hermitian_sqrt(const Mat4& m) {
    const EigenSystem sys = hermitian_eigensystem(m);
    std::array<double, 4> roots{};
    for (std::size_t i = 0; i < 4; ++i) {
        double lambda = sys.values[i];
        if (lambda < -1e-9)
            throw OutOfRange("hermitian_sqrt: eigenvalue below -1e-9, input is not PSD");
        roots[i] = std::sqrt(std::max(lambda, 0.0));
    }
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 4; ++k)
                s += sys.vectors(i, k) * roots[static_cast<std::size_t>(k)] * std::conj(sys.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

}  // namespace entanglecert
