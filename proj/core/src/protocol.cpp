#include "entanglecert/protocol.hpp"

#include <cmath>
#include <limits>

namespace entanglecert {

namespace {

constexpr double kBranchCutoff = 1e-14;

struct ReversalSample {
    Outcome a;
    Outcome b;
};

// Draws the reversal outcome pair from the disturbed state.
ReversalSample sample_reversal(const DensityMatrix& state, const ReversalMeasurement& qa,
                               const ReversalMeasurement& qb, RngStream& rng) {
    constexpr Outcome outcomes[2] = {Outcome::plus, Outcome::minus};
    double probs[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Mat2 ea = reversal_operator(qa, outcomes[i]);
            const Mat2 eb = reversal_operator(qb, outcomes[j]);
            const Mat4 effect = tensor_product(ea.adjoint() * ea, eb.adjoint() * eb);
            probs[i][j] = (state.m * effect).trace().real();
        }

    const double u = rng.next_double();
    double cumulative = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (probs[i][j] < kBranchCutoff) continue;
            cumulative += probs[i][j];
            if (u < cumulative) return {outcomes[i], outcomes[j]};
        }
    for (int i = 1; i >= 0; --i)
        for (int j = 1; j >= 0; --j)
            if (probs[i][j] >= kBranchCutoff) return {outcomes[i], outcomes[j]};
    throw ZeroProbabilityBranch("sample_reversal: no viable branch");
}

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

double threshold_for(Test t) {
    switch (t) {
        case Test::witness: return 0.0;
        case Test::steering_a_to_b:
        case Test::steering_b_to_a: return 1.0 / std::sqrt(3.0);
        case Test::chsh: return 2.0;
    }
    return 0.0;
}

}  // namespace

TrialRecord run_trial(const DensityMatrix& input, double pa, double pb, const BlochVector& ra,
                      const BlochVector& rb, ReversalPolicy policy, RngStream& rng) {
    const WeakMeasurement ma(pa, ra);
    const WeakMeasurement mb(pb, rb);
    auto weak = sample_outcomes(input, ma, mb, rng);

    TrialRecord record{ra, rb, pa, pb, weak.a, weak.b, weak.state,
                       std::nullopt, std::nullopt, RecoveryStatus::not_attempted, std::nullopt};

    const bool attempt = policy == ReversalPolicy::all_branches ||
                         (weak.a == Outcome::plus && weak.b == Outcome::plus);
    if (!attempt) return record;

    const auto qa = ReversalMeasurement::matching(ma);
    const auto qb = ReversalMeasurement::matching(mb);
    const ReversalSample rev = sample_reversal(record.disturbed, qa, qb, rng);
    record.reversal_a = rev.a;
    record.reversal_b = rev.b;

    if (rev.a == weak.a && rev.b == weak.b) {
        record.status = RecoveryStatus::matched;
        auto recovered = apply_measurement(record.disturbed, reversal_operator(qa, rev.a),
                                           reversal_operator(qb, rev.b));
        record.final_state = recovered.state;
    } else {
        record.status = RecoveryStatus::unmatched;
    }
    return record;
}

std::vector<double> SweepGrid::linspace(double lo, double hi, int n) {
    std::vector<double> v;
    if (n <= 0) return v;
    if (n == 1) {
        v.push_back(lo);
        return v;
    }
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

std::vector<CertificationResult> sweep_certification(const SweepGrid& grid,
                                                     const DensityMatrix& state, RngStream root) {
    if (grid.pa_values.empty() || grid.pb_values.empty() || grid.tests.empty())
        throw OutOfRange("sweep_certification: empty grid");

    std::vector<CertificationResult> results;
    results.reserve(grid.tests.size() * grid.pa_values.size() * grid.pb_values.size());

    std::uint64_t cell = 0;
    for (const Test test : grid.tests)
        for (const double pa : grid.pa_values)
            for (const double pb : grid.pb_values) {
                const std::uint64_t stream_index = cell++;
                try {
                    if (grid.shots > 0) {
                        results.push_back(certify_sampled(state, test, pa, pb, grid.shots,
                                                          root.split(stream_index)));
                    } else {
                        switch (test) {
                            case Test::witness:
                                results.push_back(witness_weak(state, pa, pb));
                                break;
                            case Test::steering_a_to_b:
                                results.push_back(steering(state, pa, pb, TrustedSide::bob));
                                break;
                            case Test::steering_b_to_a:
                                results.push_back(steering(state, pa, pb, TrustedSide::alice));
                                break;
                            case Test::chsh:
                                results.push_back(chsh(state, pa, pb));
                                break;
                        }
                    }
                } catch (const ZeroStrength&) {
                    // Compensation undefined at zero strength; keep the grid
                    // cell with a NaN statistic instead of aborting the sweep.
                    CertificationResult blank;
                    blank.test = test;
                    blank.statistic = nan_value();
                    blank.threshold = threshold_for(test);
                    blank.certified = false;
                    blank.strength_a = pa;
                    blank.strength_b = pb;
                    results.push_back(blank);
                }
            }
    return results;
}

namespace {

struct Accumulator {
    double weight = 0.0;
    double fidelity = 0.0;
    double eof = 0.0;
    double purity_sum = 0.0;

    void add(double w, const StateMetrics& m) {
        weight += w;
        fidelity += w * m.fidelity;
        eof += w * m.eof;
        purity_sum += w * m.purity;
    }
};

}  // namespace

std::vector<RecoveryRow> sweep_recovery(const std::vector<double>& p_values,
                                        const DensityMatrix& input, const PureState& reference,
                                        const AveragingPlan& plan, long shots,
                                        ReversalPolicy policy, RngStream root) {
    if (p_values.empty()) throw OutOfRange("sweep_recovery: empty strength list");
    std::vector<RecoveryRow> rows;
    rows.reserve(p_values.size());

    const auto weak_branches = [&](Outcome la, Outcome lb) {
        return policy == ReversalPolicy::all_branches ||
               (la == Outcome::plus && lb == Outcome::plus);
    };

    for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
        const double p = p_values[pi];
        RecoveryRow row;
        row.p = p;

        if (shots <= 0) {
            // Exact enumeration over direction pairs and outcome branches.
            Accumulator before;
            Accumulator after;
            for (const auto& [ra, rb] : plan.directions) {
                const WeakMeasurement ma(p, ra);
                const WeakMeasurement mb(p, rb);
                const auto qa = ReversalMeasurement::matching(ma);
                const auto qb = ReversalMeasurement::matching(mb);
                for (Outcome la : {Outcome::plus, Outcome::minus})
                    for (Outcome lb : {Outcome::plus, Outcome::minus}) {
                        const double pw = joint_outcome_probability(input, ma, mb, la, lb);
                        if (pw < kBranchCutoff) continue;
                        const auto disturbed = apply_measurement(input, weak_operator(ma, la),
                                                                 weak_operator(mb, lb));
                        before.add(pw, state_metrics(reference, disturbed.state));
                        if (!weak_branches(la, lb)) continue;

                        const Mat2 rev_a = reversal_operator(qa, la);
                        const Mat2 rev_b = reversal_operator(qb, lb);
                        const Mat4 k = tensor_product(rev_a, rev_b);
                        const Mat4 raw = k * disturbed.state.m * k.adjoint();
                        const double pr = raw.trace().real();
                        if (pw * pr < kBranchCutoff) continue;
                        const DensityMatrix final_state((1.0 / pr) * raw);
                        after.add(pw * pr, state_metrics(reference, final_state));
                    }
            }
            row.fidelity_before = before.fidelity / before.weight;
            row.eof_before = before.eof / before.weight;
            row.purity_before = before.purity_sum / before.weight;
            if (after.weight > 0.0) {
                row.fidelity_after = after.fidelity / after.weight;
                row.eof_after = after.eof / after.weight;
                row.purity_after = after.purity_sum / after.weight;
            } else {
                row.fidelity_after = nan_value();
                row.eof_after = nan_value();
                row.purity_after = nan_value();
            }
            row.matched_fraction = after.weight / static_cast<double>(plan.size());
        } else {
            // In-line Monte Carlo: the same trials feed the before-columns,
            // the matched subset feeds the after-columns.
            Accumulator before;
            Accumulator after;
            long matched = 0;
            long total = 0;
            for (std::size_t k = 0; k < plan.directions.size(); ++k) {
                RngStream trial_rng =
                    root.split(pi * plan.directions.size() + k);
                const auto& [ra, rb] = plan.directions[k];
                for (long t = 0; t < shots; ++t) {
                    const TrialRecord trial = run_trial(input, p, p, ra, rb, policy, trial_rng);
                    before.add(1.0, state_metrics(reference, trial.disturbed));
                    ++total;
                    if (trial.status == RecoveryStatus::matched) {
                        ++matched;
                        after.add(1.0, state_metrics(reference, *trial.final_state));
                    }
                }
            }
            row.fidelity_before = before.fidelity / before.weight;
            row.eof_before = before.eof / before.weight;
            row.purity_before = before.purity_sum / before.weight;
            if (matched > 0) {
                row.fidelity_after = after.fidelity / after.weight;
                row.eof_after = after.eof / after.weight;
                row.purity_after = after.purity_sum / after.weight;
            } else {
                row.fidelity_after = nan_value();
                row.eof_after = nan_value();
                row.purity_after = nan_value();
            }
            row.matched_fraction = static_cast<double>(matched) / static_cast<double>(total);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<TradeoffRow> tradeoff_curves(const std::vector<double>& p_values,
                                         const DensityMatrix& state, const AveragingPlan& plan) {
    if (p_values.empty()) throw OutOfRange("tradeoff_curves: empty strength list");
    std::vector<TradeoffRow> rows;
    rows.reserve(p_values.size());
    for (const double p : p_values) {
        TradeoffRow row;
        row.p = p;
        row.reversibility = reversibility(p, p);
        row.chsh = chsh(state, p, p).statistic;
        // S3 ~ p * (weighted Pauli sum)/3 after compensation, so the p = 0
        // limit is 0 even though the estimator divides by p.
        row.steering = p == 0.0 ? 0.0 : steering(state, p, p, TrustedSide::bob).statistic;
        row.eof = averaged_quantity(state, plan, p, p, [](const DensityMatrix& rho) {
            return entanglement_of_formation(std::min(1.0, concurrence(rho)));
        });
        rows.push_back(row);
    }
    return rows;
}

}  // namespace entanglecert
