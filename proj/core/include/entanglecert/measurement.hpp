#pragma once

#include <utility>

#include "entanglecert/rng.hpp"
#include "entanglecert/states.hpp"

namespace entanglecert {

/// Binary measurement outcome.
enum class Outcome : int { plus = +1, minus = -1 };

inline int outcome_sign(Outcome l) { return static_cast<int>(l); }
inline Outcome flip(Outcome l) { return l == Outcome::plus ? Outcome::minus : Outcome::plus; }

/// Tunable-strength two-outcome measurement along a Bloch direction.
/// Strength 0 extracts nothing; strength 1 is projective.
struct WeakMeasurement {
    double strength;
    BlochVector direction;

    /// Throws OutOfRange unless strength is in [0, 1].
    WeakMeasurement(double p, const BlochVector& r);
};

/// Inverted-weighting partner of a weak measurement. On matched outcomes the
/// composition R_l M_l is proportional to the identity, which restores the
/// pre-measurement state.
struct ReversalMeasurement {
    double strength;
    BlochVector direction;

    ReversalMeasurement(double q, const BlochVector& s);

    /// The recovery condition: equal strength and direction per side.
    static ReversalMeasurement matching(const WeakMeasurement& m);
};

/// Projector (I +- r.sigma)/2 onto the +-1 eigenspace of r.sigma.
Mat2 projector(const BlochVector& r, Outcome sign);

/// M_l = sqrt((1+p)/2) P_l + sqrt((1-p)/2) P_{-l}.
Mat2 weak_operator(const WeakMeasurement& m, Outcome l);

/// R_l = sqrt((1-q)/2) P_l + sqrt((1+q)/2) P_{-l}.
Mat2 reversal_operator(const ReversalMeasurement& r, Outcome l);

/// Generalized observable mu = sum_l l M_l^dag M_l; equals p * r.sigma.
Mat2 generalized_observable(const WeakMeasurement& m);

/// P(l_A, l_B) = tr(rho (M_A^dag M_A (x) M_B^dag M_B)). The four outcome
/// probabilities sum to 1.
double joint_outcome_probability(const DensityMatrix& state, const WeakMeasurement& a,
                                 const WeakMeasurement& b, Outcome la, Outcome lb);

struct MeasuredPure {
    PureState state;
    double probability;
};

struct MeasuredMixed {
    DensityMatrix state;
    double probability;
};

/// Applies (op_a (x) op_b) to the state and renormalizes, returning the
/// normalized post-measurement state and the branch probability N. Branches
/// with N below 1e-14 throw ZeroProbabilityBranch rather than renormalize.
MeasuredPure apply_measurement(const PureState& psi, const Mat2& op_a, const Mat2& op_b);
MeasuredMixed apply_measurement(const DensityMatrix& rho, const Mat2& op_a, const Mat2& op_b);

struct SampledOutcomes {
    Outcome a;
    Outcome b;
    DensityMatrix state;  ///< normalized post-measurement state of the drawn branch
    double probability;   ///< probability of the drawn branch
};

/// Draws a joint outcome pair with its Born probability and returns the
/// corresponding post-measurement branch. Consumes one draw from `rng`.
SampledOutcomes sample_outcomes(const DensityMatrix& state, const WeakMeasurement& a,
                                const WeakMeasurement& b, RngStream& rng);

/// Half-wave-plate angle to measurement strength, p = |cos(4 theta)|.
double strength_from_waveplate(double theta);

}  // namespace entanglecert
