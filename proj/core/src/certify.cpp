#include "entanglecert/certify.hpp"

#include <cmath>
#include <numbers>

namespace entanglecert {

namespace {

// Witness weights w_x = -w_y = w_z = 1, shared by the witness and steering
// statistics.
constexpr double kWeights[3] = {1.0, -1.0, 1.0};

double quadrature(const std::vector<CorrelationEstimate>& estimates) {
    double s = 0.0;
    for (const auto& e : estimates) s += e.standard_error * e.standard_error;
    return std::sqrt(s);
}

// Single statistic-assembly path used by both the exact and sampled modes.
CertificationResult assemble(Test test, double pa, double pb,
                             std::vector<CorrelationEstimate> correlations) {
    CertificationResult result;
    result.test = test;
    result.strength_a = pa;
    result.strength_b = pb;

    switch (test) {
        case Test::witness: {
            if (pa * pb == 0.0)
                throw ZeroStrength("witness: strength compensation undefined at pa*pb = 0");
            double weighted = 0.0;
            for (int i = 0; i < 3; ++i)
                weighted += kWeights[i] * correlations[static_cast<std::size_t>(i)].value;
            result.statistic = 0.25 - weighted / (4.0 * pa * pb);
            result.threshold = 0.0;
            result.certified = result.statistic < result.threshold;
            result.standard_error = quadrature(correlations) / (4.0 * pa * pb);
            break;
        }
        case Test::steering_a_to_b:
        case Test::steering_b_to_a: {
            const double trusted = test == Test::steering_a_to_b ? pb : pa;
            if (trusted == 0.0)
                throw ZeroStrength("steering: trusted-side strength is 0");
            double weighted = 0.0;
            for (int i = 0; i < 3; ++i)
                weighted += kWeights[i] * correlations[static_cast<std::size_t>(i)].value;
            result.statistic = weighted / (3.0 * trusted);
            result.threshold = std::numbers::inv_sqrt3;
            result.certified = result.statistic > result.threshold;
            result.standard_error = quadrature(correlations) / (3.0 * trusted);
            break;
        }
        case Test::chsh: {
            const auto& c = correlations;
            result.statistic = std::abs(c[0].value + c[1].value + c[2].value - c[3].value);
            result.threshold = 2.0;
            result.certified = result.statistic > result.threshold;
            result.standard_error = quadrature(correlations);
            break;
        }
    }
    result.correlations = std::move(correlations);
    return result;
}

}  // namespace

std::string test_name(Test t) {
    switch (t) {
        case Test::witness: return "witness";
        case Test::steering_a_to_b: return "steering-ab";
        case Test::steering_b_to_a: return "steering-ba";
        case Test::chsh: return "chsh";
    }
    return "unknown";
}

std::optional<Test> test_from_name(const std::string& name) {
    if (name == "witness") return Test::witness;
    if (name == "steering-ab") return Test::steering_a_to_b;
    if (name == "steering-ba") return Test::steering_b_to_a;
    if (name == "chsh") return Test::chsh;
    return std::nullopt;
}

double correlation(const DensityMatrix& state, const WeakMeasurement& a,
                   const WeakMeasurement& b) {
    const Mat4 joint = tensor_product(generalized_observable(a), generalized_observable(b));
    return (state.m * joint).trace().real();
}

double witness_from_pauli(const PauliCorrelations& c) {
    if (!c.x) throw MissingDirection("witness_from_pauli: missing x correlation");
    if (!c.y) throw MissingDirection("witness_from_pauli: missing y correlation");
    if (!c.z) throw MissingDirection("witness_from_pauli: missing z correlation");
    return 0.25 - 0.25 * (*c.x - *c.y + *c.z);
}

std::vector<std::pair<BlochVector, BlochVector>> settings_for(Test t) {
    if (t == Test::chsh)
        return {{BlochVector::z_axis(), BlochVector::z_plus_x()},
                {BlochVector::z_axis(), BlochVector::z_minus_x()},
                {BlochVector::x_axis(), BlochVector::z_plus_x()},
                {BlochVector::x_axis(), BlochVector::z_minus_x()}};
    return {{BlochVector::x_axis(), BlochVector::x_axis()},
            {BlochVector::y_axis(), BlochVector::y_axis()},
            {BlochVector::z_axis(), BlochVector::z_axis()}};
}

namespace {

std::vector<CorrelationEstimate> exact_correlations(const DensityMatrix& state, Test test,
                                                    double pa, double pb) {
    std::vector<CorrelationEstimate> out;
    for (const auto& [ra, rb] : settings_for(test))
        out.push_back({correlation(state, WeakMeasurement(pa, ra), WeakMeasurement(pb, rb)), 0, 0.0});
    return out;
}

}  // namespace

CertificationResult witness_weak(const DensityMatrix& state, double pa, double pb) {
    if (pa * pb == 0.0)
        throw ZeroStrength("witness: strength compensation undefined at pa*pb = 0");
    return assemble(Test::witness, pa, pb, exact_correlations(state, Test::witness, pa, pb));
}

CertificationResult steering(const DensityMatrix& state, double pa, double pb,
                             TrustedSide trusted) {
    const Test test = trusted == TrustedSide::bob ? Test::steering_a_to_b : Test::steering_b_to_a;
    if ((trusted == TrustedSide::bob ? pb : pa) == 0.0)
        throw ZeroStrength("steering: trusted-side strength is 0");
    return assemble(test, pa, pb, exact_correlations(state, test, pa, pb));
}

CertificationResult chsh(const DensityMatrix& state, double pa, double pb) {
    return assemble(Test::chsh, pa, pb, exact_correlations(state, Test::chsh, pa, pb));
}

CorrelationEstimate estimate_correlation(const OutcomeCounts& counts) {
    const long n = counts.total();
    if (n <= 0) throw EmptyCounts("estimate_correlation: zero total counts");
    const double value =
        static_cast<double>(counts.pp + counts.mm - counts.pm - counts.mp) / static_cast<double>(n);
    const double se = std::sqrt(std::max(0.0, 1.0 - value * value) / static_cast<double>(n));
    return {value, n, se};
}

CertificationResult certify_sampled(const DensityMatrix& state, Test test, double pa, double pb,
                                    long shots_per_setting, RngStream rng) {
    if (shots_per_setting <= 0)
        throw OutOfRange("certify_sampled: shots_per_setting must be positive");

    const auto settings = settings_for(test);
    std::vector<CorrelationEstimate> correlations;
    correlations.reserve(settings.size());

    for (std::size_t k = 0; k < settings.size(); ++k) {
        const WeakMeasurement ma(pa, settings[k].first);
        const WeakMeasurement mb(pb, settings[k].second);
        double probs[4] = {
            joint_outcome_probability(state, ma, mb, Outcome::plus, Outcome::plus),
            joint_outcome_probability(state, ma, mb, Outcome::plus, Outcome::minus),
            joint_outcome_probability(state, ma, mb, Outcome::minus, Outcome::plus),
            joint_outcome_probability(state, ma, mb, Outcome::minus, Outcome::minus)};

        RngStream setting_rng = rng.split(k);
        long counts[4] = {0, 0, 0, 0};
        for (long shot = 0; shot < shots_per_setting; ++shot) {
            const double u = setting_rng.next_double();
            double cumulative = 0.0;
            int pick = 3;
            for (int branch = 0; branch < 4; ++branch) {
                cumulative += probs[branch];
                if (u < cumulative) {
                    pick = branch;
                    break;
                }
            }
            ++counts[pick];
        }
        correlations.push_back(
            estimate_correlation({counts[0], counts[1], counts[2], counts[3]}));
    }
    return assemble(test, pa, pb, std::move(correlations));
}

}  // namespace entanglecert
