#pragma once

#include "entanglecert/protocol.hpp"

namespace entanglecert {

/// Mean-reverting drift of the source decoherence degree gamma, stepped by
/// Euler-Maruyama and clamped to [0, 1].
struct OUProcess {
    double mean = 0.3;        ///< long-run level mu_gamma
    double rate = 0.05;       ///< reversion rate theta per step
    double volatility = 0.05; ///< sigma per sqrt(step)
    double dt = 1.0;
    double value = 0.3;       ///< current gamma

    /// gamma += theta (mu - gamma) dt + sigma sqrt(dt) N(0,1), then clamp.
    double step(RngStream& rng);
};

/// Drifting source state: (1-gamma) |Phi+><Phi+| + gamma/2 (|HH><HH| + |VV><VV|).
/// Its concurrence is 1 - gamma. Throws OutOfRange unless gamma is in [0, 1].
DensityMatrix mixed_state(double gamma);

/// Witness-gated selection parameters.
struct SelectionConfig {
    double threshold = -0.4;   ///< select windows with W < threshold; must be < 0
    long window_shots = 10000; ///< shots per setting within a window (sampled mode)
    double pa = 0.7;           ///< witness strengths during monitoring
    double pb = 0.7;
    bool exact = false;        ///< exact-W gate and exact per-window Bell value
};

/// One monitoring window.
struct WindowRecord {
    int index = 0;
    double gamma = 0.0;
    double witness = 0.0;
    double witness_se = 0.0;
    bool selected = false;
    double s = 0.0;     ///< post-recovery CHSH at full strength
    double s_se = 0.0;
};

/// Per-window records plus ensemble CHSH aggregates. The selected set is the
/// subset of windows with W below threshold.
struct EnsembleReport {
    std::vector<WindowRecord> windows;
    long selected_count = 0;
    double s_selected = 0.0;     ///< mean window S over the selected set
    double s_selected_se = 0.0;
    double s_all = 0.0;          ///< mean window S over every window
    double s_all_se = 0.0;
};

/// Steps the OU path (one step per window), certifies each window's state
/// with the configured witness, gates on the threshold, pushes a fresh copy
/// of the window state through matched-outcome recovery, and runs the
/// projective CHSH test on the recovered state. The path is generated first
/// on its own stream; window evaluation uses per-window child streams.
EnsembleReport run_monitoring(const SelectionConfig& config, OUProcess process, int windows,
                              RngStream root);

}  // namespace entanglecert
