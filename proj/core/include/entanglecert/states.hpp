#pragma once

#include <array>

#include "entanglecert/linalg.hpp"

namespace entanglecert {

/// Unit vector on the Bloch sphere; fixes a measurement direction r so that
/// the associated observable is r.sigma.
struct BlochVector {
    double x, y, z;

    /// Throws NonUnitDirection unless |r| = 1 within 1e-12.
    BlochVector(double x_, double y_, double z_);

    /// Scales an arbitrary nonzero vector onto the sphere.
    static BlochVector normalized(double x_, double y_, double z_);

    static BlochVector x_axis() { return {1.0, 0.0, 0.0}; }
    static BlochVector y_axis() { return {0.0, 1.0, 0.0}; }
    static BlochVector z_axis() { return {0.0, 0.0, 1.0}; }
    static BlochVector z_plus_x();   ///< (z + x)/sqrt(2)
    static BlochVector z_minus_x();  ///< (z - x)/sqrt(2)
};

/// r.sigma for a unit direction r.
Mat2 dot_sigma(const BlochVector& r);

/// Two-qubit pure state. Basis order |00>, |01>, |10>, |11> with Alice the
/// left factor and |0> = |H>, |1> = |V>.
struct PureState {
    std::array<Complex, 4> amp{};

    /// Throws OutOfRange unless the amplitudes have norm 1 within 1e-12.
    explicit PureState(const std::array<Complex, 4>& amplitudes);

    /// Rescales arbitrary amplitudes to norm 1 (throws on the zero vector).
    static PureState normalized(const std::array<Complex, 4>& amplitudes);

    /// (|00> + |11>)/sqrt(2), the ideal input state.
    static PureState bell_phi_plus();

    /// Computational basis state |index> for index in {0,..,3}.
    static PureState basis(int index);

    double norm() const;
};

/// Two-qubit density matrix. Construction checks Hermiticity and unit trace
/// within 1e-10; positivity is validated lazily via min_eigenvalue() because
/// finite-shot tomography may legitimately produce slightly negative spectra.
struct DensityMatrix {
    Mat4 m;

    explicit DensityMatrix(const Mat4& matrix);

    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed();

    double min_eigenvalue() const;
};

}  // namespace entanglecert
