#pragma once

#include "entanglecert/metrics.hpp"

namespace entanglecert {

/// Which weak-outcome branches proceed to the reversal stage.
enum class ReversalPolicy { all_branches, plus_only };

enum class RecoveryStatus { matched, unmatched, not_attempted };

/// One certify-then-recover run.
struct TrialRecord {
    BlochVector direction_a;
    BlochVector direction_b;
    double pa = 0.0;
    double pb = 0.0;
    Outcome weak_a = Outcome::plus;
    Outcome weak_b = Outcome::plus;
    DensityMatrix disturbed;
    std::optional<Outcome> reversal_a;
    std::optional<Outcome> reversal_b;
    RecoveryStatus status = RecoveryStatus::not_attempted;
    std::optional<DensityMatrix> final_state;  ///< present iff status == matched
};

/// Samples the weak outcomes, applies the back action, and (policy
/// permitting) samples the matched-parameter reversal. Reversal strengths
/// and directions are pinned to the weak ones per side. plus_only attempts
/// recovery only on the (+1, +1) weak branch.
TrialRecord run_trial(const DensityMatrix& input, double pa, double pb, const BlochVector& ra,
                      const BlochVector& rb, ReversalPolicy policy, RngStream& rng);

/// Strength grid for certification sweeps.
struct SweepGrid {
    std::vector<double> pa_values;
    std::vector<double> pb_values;
    std::vector<Test> tests;
    long shots = 0;  ///< 0 = exact trace evaluation

    static std::vector<double> linspace(double lo, double hi, int n);
};

/// One CertificationResult per (test, pa, pb) cell, pa-major then pb. Cells
/// where a compensated statistic is undefined (zero strength on a trusted
/// side) are reported with a NaN statistic and certified = false so that
/// full-range grids stay usable.
std::vector<CertificationResult> sweep_certification(const SweepGrid& grid,
                                                     const DensityMatrix& state,
                                                     RngStream root);

/// Averaged state quality before and after recovery at pa = pb = p.
struct RecoveryRow {
    double p = 0.0;
    double fidelity_before = 0.0;
    double eof_before = 0.0;
    double purity_before = 0.0;
    double fidelity_after = 0.0;
    double eof_after = 0.0;
    double purity_after = 0.0;
    double matched_fraction = 0.0;
};

/// shots == 0 enumerates all branches exactly (before-columns via the
/// averaged quantities, after-columns as the matched-branch conditional
/// average). shots > 0 runs `shots` trials per direction pair and p value,
/// feeding the same trial stream to both column groups.
std::vector<RecoveryRow> sweep_recovery(const std::vector<double>& p_values,
                                        const DensityMatrix& input, const PureState& reference,
                                        const AveragingPlan& plan, long shots,
                                        ReversalPolicy policy, RngStream root);

/// One row of the strength/reversibility/nonlocality/steering/entanglement
/// tradeoff at pa = pb = p.
struct TradeoffRow {
    double p = 0.0;
    double reversibility = 0.0;
    double chsh = 0.0;
    double steering = 0.0;
    double eof = 0.0;
};

/// Exact tradeoff curves; eof is averaged under `plan`.
std::vector<TradeoffRow> tradeoff_curves(const std::vector<double>& p_values,
                                         const DensityMatrix& state, const AveragingPlan& plan);

}  // namespace entanglecert
