#include "entanglecert/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entanglecert {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// Pushes one fresh copy of the window state through the matched-outcome
// recovery pipeline: weak (+,+) branch followed by the matching reversal on
// the same outcomes. The composition is proportional to identity, so the
// result equals the window state.
DensityMatrix recover_window_state(const DensityMatrix& state, double pa, double pb) {
    const WeakMeasurement ma(pa, BlochVector::z_axis());
    const WeakMeasurement mb(pb, BlochVector::z_axis());
    const auto disturbed =
        apply_measurement(state, weak_operator(ma, Outcome::plus), weak_operator(mb, Outcome::plus));
    const auto qa = ReversalMeasurement::matching(ma);
    const auto qb = ReversalMeasurement::matching(mb);
    const auto recovered = apply_measurement(disturbed.state, reversal_operator(qa, Outcome::plus),
                                             reversal_operator(qb, Outcome::plus));
    return recovered.state;
}

}  // namespace

double OUProcess::step(RngStream& rng) {
    value += rate * (mean - value) * dt + volatility * std::sqrt(dt) * rng.next_normal();
    value = std::clamp(value, 0.0, 1.0);
    return value;
}

DensityMatrix mixed_state(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw OutOfRange("mixed_state: gamma outside [0, 1]");
    const Mat4 bell = DensityMatrix::from_pure(PureState::bell_phi_plus()).m;
    Mat4 classical = zero4();
    classical(0, 0) = 0.5;
    classical(3, 3) = 0.5;
    return DensityMatrix((1.0 - gamma) * bell + gamma * classical);
}

EnsembleReport run_monitoring(const SelectionConfig& config, OUProcess process, int windows,
                              RngStream root) {
    if (windows <= 0) throw OutOfRange("run_monitoring: windows must be positive");
    if (!(config.threshold < 0.0))
        throw OutOfRange("run_monitoring: witness threshold must be negative");
    if (!config.exact && config.window_shots <= 0)
        throw OutOfRange("run_monitoring: window_shots must be positive in sampled mode");

    // Phase 1: the OU path, inherently sequential, on its own stream.
    RngStream path_rng = root.split(0);
    std::vector<double> gammas;
    gammas.reserve(static_cast<std::size_t>(windows));
    for (int w = 0; w < windows; ++w) gammas.push_back(process.step(path_rng));

    // Phase 2: per-window certification, gating, recovery, and Bell test.
    EnsembleReport report;
    report.windows.reserve(static_cast<std::size_t>(windows));
    for (int w = 0; w < windows; ++w) {
        RngStream window_rng = root.split(static_cast<std::uint64_t>(w) + 1);
        const double gamma = gammas[static_cast<std::size_t>(w)];
        const DensityMatrix state = mixed_state(gamma);

        WindowRecord record;
        record.index = w;
        record.gamma = gamma;

        if (config.exact) {
            record.witness = witness_weak(state, config.pa, config.pb).statistic;
            record.witness_se = 0.0;
        } else {
            const auto estimate = certify_sampled(state, Test::witness, config.pa, config.pb,
                                                  config.window_shots, window_rng.split(0));
            record.witness = estimate.statistic;
            record.witness_se = estimate.standard_error;
        }
        record.selected = record.witness < config.threshold;

        const DensityMatrix recovered = recover_window_state(state, config.pa, config.pb);
        if (config.exact) {
            record.s = chsh(recovered, 1.0, 1.0).statistic;
            record.s_se = 0.0;
        } else {
            const auto bell = certify_sampled(recovered, Test::chsh, 1.0, 1.0,
                                              config.window_shots, window_rng.split(1));
            record.s = bell.statistic;
            record.s_se = bell.standard_error;
        }
        report.windows.push_back(record);
    }

    double sum_all = 0.0;
    double var_all = 0.0;
    double sum_sel = 0.0;
    double var_sel = 0.0;
    for (const auto& record : report.windows) {
        sum_all += record.s;
        var_all += record.s_se * record.s_se;
        if (record.selected) {
            ++report.selected_count;
            sum_sel += record.s;
            var_sel += record.s_se * record.s_se;
        }
    }
    const double n_all = static_cast<double>(windows);
    report.s_all = sum_all / n_all;
    report.s_all_se = std::sqrt(var_all) / n_all;
    if (report.selected_count > 0) {
        const double n_sel = static_cast<double>(report.selected_count);
        report.s_selected = sum_sel / n_sel;
        report.s_selected_se = std::sqrt(var_sel) / n_sel;
    } else {
        report.s_selected = nan_value();
        report.s_selected_se = nan_value();
    }
    return report;
}

}  // namespace entanglecert
