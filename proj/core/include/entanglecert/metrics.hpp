#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "entanglecert/certify.hpp"

namespace entanglecert {

/// Direction pairs entering the outcome-averaged quantities; D is the pair
/// count (3 for the witness/steering set, 4 for the CHSH set).
struct AveragingPlan {
    std::vector<std::pair<BlochVector, BlochVector>> directions;

    static AveragingPlan witness_plan();  ///< (x,x), (y,y), (z,z)
    static AveragingPlan chsh_plan();     ///< z/x against (z+-x)/sqrt(2)

    int size() const { return static_cast<int>(directions.size()); }
};

/// <psi| rho |psi> for a pure reference.
double fidelity_with_pure(const PureState& target, const DensityMatrix& state);

/// tr(rho^2), in [1/4, 1] for two qubits.
double purity(const DensityMatrix& state);

/// Wootters concurrence through the Hermitian sqrt(rho) route.
double concurrence(const DensityMatrix& state);

/// Binary-entropy map from concurrence, in bits. Throws OutOfRange unless
/// c is in [0, 1].
double entanglement_of_formation(double concurrence_value);

/// Probability that matched-outcome reversal succeeds:
/// R = (1 - pA^2)(1 - pB^2)/4.
double reversibility(double pa, double pb);

/// Exact outcome average: mean of quantity[rho_m] over the plan's direction
/// pairs and all outcome branches, each branch weighted by its joint
/// probability. Branches below probability 1e-14 are skipped.
double averaged_quantity(const DensityMatrix& input, const AveragingPlan& plan, double pa,
                         double pb, const std::function<double(const DensityMatrix&)>& quantity);

/// Fidelity / purity / concurrence / entanglement-of-formation bundle.
struct StateMetrics {
    double fidelity = 0.0;
    double purity = 0.0;
    double concurrence = 0.0;
    double eof = 0.0;
};

StateMetrics state_metrics(const PureState& reference, const DensityMatrix& state);

/// Two-qubit Pauli expectations indexed by {I, x, y, z} x {I, x, y, z}.
/// (I, I) is fixed at 1; the other 15 must be supplied for inversion.
struct PauliExpectations {
    std::array<std::optional<double>, 16> values{};

    PauliExpectations();

    void set(int i, int j, double value);
    bool has(int i, int j) const;
    double get(int i, int j) const;  ///< throws MissingExpectation
};

/// rho = (1/4) sum_ij E_ij sigma_i (x) sigma_j. Hermitian and unit-trace by
/// construction; the minimum eigenvalue may be negative at finite shots and
/// is reported separately via DensityMatrix::min_eigenvalue().
DensityMatrix tomography_linear_inversion(const PauliExpectations& e);

/// Exact Pauli expectations tr(rho sigma_i (x) sigma_j) of a state.
PauliExpectations exact_expectations(const DensityMatrix& state);

/// Finite-shot expectations: projective sampling per Pauli pair, setting k
/// drawing `shots_per_setting` outcomes from rng.split(k).
PauliExpectations sampled_expectations(const DensityMatrix& state, long shots_per_setting,
                                       RngStream rng);

}  // namespace entanglecert
