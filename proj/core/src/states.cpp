#include "entanglecert/states.hpp"

#include <cmath>
#include <numbers>

namespace entanglecert {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kStateTol = 1e-10;

}  // namespace

BlochVector::BlochVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) > kUnitTol)
        throw NonUnitDirection("BlochVector: norm deviates from 1 by more than 1e-12");
}

BlochVector BlochVector::normalized(double x_, double y_, double z_) {
    const double n = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
    if (n == 0.0) throw NonUnitDirection("BlochVector: cannot normalize the zero vector");
    return {x_ / n, y_ / n, z_ / n};
}

BlochVector BlochVector::z_plus_x() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {s, 0.0, s};
}

BlochVector BlochVector::z_minus_x() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {-s, 0.0, s};
}

Mat2 dot_sigma(const BlochVector& r) {
    Mat2 m;
    m(0, 0) = Complex(r.z, 0.0);
    m(0, 1) = Complex(r.x, -r.y);
    m(1, 0) = Complex(r.x, r.y);
    m(1, 1) = Complex(-r.z, 0.0);
    return m;
}

PureState::PureState(const std::array<Complex, 4>& amplitudes) : amp(amplitudes) {
    if (std::abs(norm() - 1.0) > kUnitTol)
        throw OutOfRange("PureState: amplitudes are not normalized within 1e-12");
}

PureState PureState::normalized(const std::array<Complex, 4>& amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (n2 == 0.0) throw OutOfRange("PureState: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    std::array<Complex, 4> scaled;
    for (std::size_t i = 0; i < 4; ++i) scaled[i] = amplitudes[i] * inv;
    return PureState(scaled);
}

PureState PureState::bell_phi_plus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return PureState({Complex(s, 0.0), 0.0, 0.0, Complex(s, 0.0)});
}

PureState PureState::basis(int index) {
    if (index < 0 || index > 3) throw OutOfRange("PureState::basis: index outside {0,..,3}");
    std::array<Complex, 4> a{};
    a[static_cast<std::size_t>(index)] = 1.0;
    return PureState(a);
}

double PureState::norm() const {
    double n2 = 0.0;
    for (const auto& a : amp) n2 += std::norm(a);
    return std::sqrt(n2);
}

DensityMatrix::DensityMatrix(const Mat4& matrix) : m(matrix) {
    if (!m.is_hermitian(kStateTol))
        throw NonHermitianInput("DensityMatrix: matrix is not Hermitian within 1e-10");
    if (std::abs(m.trace().real() - 1.0) > kStateTol || std::abs(m.trace().imag()) > kStateTol)
        throw OutOfRange("DensityMatrix: trace deviates from 1 by more than 1e-10");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = psi.amp[static_cast<std::size_t>(i)] * std::conj(psi.amp[static_cast<std::size_t>(j)]);
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.25 * identity4()); }

double DensityMatrix::min_eigenvalue() const { return hermitian_eigensystem(m).values[3]; }

}  // namespace entanglecert
