#include "entanglecert/measurement.hpp"

#include <cmath>

namespace entanglecert {

namespace {

constexpr double kBranchCutoff = 1e-14;

double real_trace(const Mat4& m) { return m.trace().real(); }

}  // namespace

WeakMeasurement::WeakMeasurement(double p, const BlochVector& r) : strength(p), direction(r) {
    if (!(p >= 0.0 && p <= 1.0))
        throw OutOfRange("WeakMeasurement: strength outside [0, 1]");
}

ReversalMeasurement::ReversalMeasurement(double q, const BlochVector& s)
    : strength(q), direction(s) {
    if (!(q >= 0.0 && q <= 1.0))
        throw OutOfRange("ReversalMeasurement: strength outside [0, 1]");
}

ReversalMeasurement ReversalMeasurement::matching(const WeakMeasurement& m) {
    return {m.strength, m.direction};
}

Mat2 projector(const BlochVector& r, Outcome sign) {
    const double s = outcome_sign(sign);
    return 0.5 * (identity2() + s * dot_sigma(r));
}

Mat2 weak_operator(const WeakMeasurement& m, Outcome l) {
    const double w_same = std::sqrt((1.0 + m.strength) / 2.0);
    const double w_opp = std::sqrt((1.0 - m.strength) / 2.0);
    return w_same * projector(m.direction, l) + w_opp * projector(m.direction, flip(l));
}

Mat2 reversal_operator(const ReversalMeasurement& r, Outcome l) {
    const double w_same = std::sqrt((1.0 - r.strength) / 2.0);
    const double w_opp = std::sqrt((1.0 + r.strength) / 2.0);
    return w_same * projector(r.direction, l) + w_opp * projector(r.direction, flip(l));
}

Mat2 generalized_observable(const WeakMeasurement& m) {
    Mat2 mu = zero2();
    for (Outcome l : {Outcome::plus, Outcome::minus}) {
        const Mat2 op = weak_operator(m, l);
        mu = mu + outcome_sign(l) * (op.adjoint() * op);
    }
    return mu;
}

double joint_outcome_probability(const DensityMatrix& state, const WeakMeasurement& a,
                                 const WeakMeasurement& b, Outcome la, Outcome lb) {
    const Mat2 ea = weak_operator(a, la);
    const Mat2 eb = weak_operator(b, lb);
    const Mat4 effect = tensor_product(ea.adjoint() * ea, eb.adjoint() * eb);
    return real_trace(state.m * effect);
}

MeasuredPure apply_measurement(const PureState& psi, const Mat2& op_a, const Mat2& op_b) {
    const Mat4 k = tensor_product(op_a, op_b);
    std::array<Complex, 4> out{};
    for (int i = 0; i < 4; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < 4; ++j) s += k(i, j) * psi.amp[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    double n = 0.0;
    for (const auto& a : out) n += std::norm(a);
    if (n < kBranchCutoff)
        throw ZeroProbabilityBranch("apply_measurement: branch probability below 1e-14");
    const double inv = 1.0 / std::sqrt(n);
    for (auto& a : out) a *= inv;
    return {PureState(out), n};
}

MeasuredMixed apply_measurement(const DensityMatrix& rho, const Mat2& op_a, const Mat2& op_b) {
    const Mat4 k = tensor_product(op_a, op_b);
    const Mat4 raw = k * rho.m * k.adjoint();
    const double n = raw.trace().real();
    if (n < kBranchCutoff)
        throw ZeroProbabilityBranch("apply_measurement: branch probability below 1e-14");
    return {DensityMatrix((1.0 / n) * raw), n};
}

SampledOutcomes sample_outcomes(const DensityMatrix& state, const WeakMeasurement& a,
                                const WeakMeasurement& b, RngStream& rng) {
    constexpr Outcome outcomes[2] = {Outcome::plus, Outcome::minus};
    double probs[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            probs[i][j] = joint_outcome_probability(state, a, b, outcomes[i], outcomes[j]);

    const double u = rng.next_double();
    double cumulative = 0.0;
    int pick_i = -1;
    int pick_j = -1;
    for (int i = 0; i < 2 && pick_i < 0; ++i)
        for (int j = 0; j < 2; ++j) {
            if (probs[i][j] < kBranchCutoff) continue;
            cumulative += probs[i][j];
            if (u < cumulative) {
                pick_i = i;
                pick_j = j;
                break;
            }
        }
    if (pick_i < 0) {
        // u landed in the rounding sliver past the last viable branch.
        for (int i = 1; i >= 0 && pick_i < 0; --i)
            for (int j = 1; j >= 0; --j)
                if (probs[i][j] >= kBranchCutoff) {
                    pick_i = i;
                    pick_j = j;
                    break;
                }
    }

    const Outcome la = outcomes[pick_i];
    const Outcome lb = outcomes[pick_j];
    auto branch = apply_measurement(state, weak_operator(a, la), weak_operator(b, lb));
    return {la, lb, branch.state, branch.probability};
}

double strength_from_waveplate(double theta) { return std::abs(std::cos(4.0 * theta)); }

}  // namespace entanglecert
