// Acceptance suite: one numbered end-to-end check per release criterion,
// each printed as a single PASS/FAIL line. Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "entanglecert/monitor.hpp"
#include "entanglecert/run.hpp"

using namespace entanglecert;

namespace {

int failures = 0;

struct Criterion {
    const char* label;
    double budget_seconds;
    bool ok = true;
    std::string detail;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Criterion(const char* l, double budget) : label(l), budget_seconds(budget) {}

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }

    ~Criterion() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        require(seconds < budget_seconds, "runtime budget exceeded");
        if (ok) {
            std::printf("PASS  %-60s (%.2fs < %gs)\n", label, seconds, budget_seconds);
        } else {
            std::printf("FAIL  %-60s (%.2fs)  %s\n", label, seconds, detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
};

const PureState kBell = PureState::bell_phi_plus();
const DensityMatrix kBellRho = DensityMatrix::from_pure(kBell);

std::string num(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

void criterion1_witness_strength_independence() {
    Criterion c("1. witness strength-independence (W = -0.5, 1e-12)", 1.0);
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            const double pa = i / 10.0;
            const double pb = j / 10.0;
            const double w = witness_weak(kBellRho, pa, pb).statistic;
            c.require(std::abs(w + 0.5) < 1e-12,
                      "W(" + num(pa) + "," + num(pb) + ") = " + num(w));
        }
}

void criterion2_steering_boundary() {
    Criterion c("2. steering boundary (S3 = pa, threshold 1/sqrt(3))", 1.0);
    const double bound = std::numbers::inv_sqrt3;
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            const double pa = i / 10.0;
            const double pb = j / 10.0;
            const auto result = steering(kBellRho, pa, pb, TrustedSide::bob);
            c.require(std::abs(result.statistic - pa) < 1e-12,
                      "S3(" + num(pa) + "," + num(pb) + ") = " + num(result.statistic));
            c.require(result.certified == (pa > bound), "certification region mismatch");
        }
    // Crossing at 1/sqrt(3): resolved on both sides at the 1e-12 margin.
    c.require(!steering(kBellRho, bound - 1e-12, 0.9, TrustedSide::bob).certified,
              "just below the boundary must not certify");
    c.require(steering(kBellRho, bound + 1e-12, 0.9, TrustedSide::bob).certified,
              "just above the boundary must certify");
    // One-way steering in the asymmetric region: pa < 1/sqrt(3) < pb.
    const auto forward = steering(kBellRho, 0.5, 0.8, TrustedSide::bob);
    const auto backward = steering(kBellRho, 0.5, 0.8, TrustedSide::alice);
    c.require(!forward.certified && backward.certified,
              "role exchange should flip certification at (0.5, 0.8)");
}

void criterion3_chsh_boundary() {
    Criterion c("3. CHSH boundary (S = 2 sqrt(2) pa pb, region pa pb > 1/sqrt(2))", 1.0);
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const double pa = i / 10.0;
            const double pb = j / 10.0;
            const auto result = chsh(kBellRho, pa, pb);
            c.require(std::abs(result.statistic - tsirelson * pa * pb) < 1e-12,
                      "S(" + num(pa) + "," + num(pb) + ") = " + num(result.statistic));
            c.require(result.certified == (pa * pb > 1.0 / std::numbers::sqrt2),
                      "certification region mismatch at (" + num(pa) + "," + num(pb) + ")");
        }
    c.require(std::abs(chsh(kBellRho, 1.0, 1.0).statistic - 2.8284271247) < 1e-9,
              "S(1,1) deviates from 2.8284271247");
}

void criterion4_reversibility_monte_carlo() {
    Criterion c("4. reversibility vs Monte Carlo matched frequency (5x5 grid)", 30.0);
    const long trials = 100000;
    const double grid[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
    RngStream root(2024, 0);
    std::uint64_t cell = 0;
    for (const double pa : grid)
        for (const double pb : grid) {
            RngStream rng = root.split(cell++);
            long matched = 0;
            for (long t = 0; t < trials; ++t) {
                const auto trial = run_trial(kBellRho, pa, pb, BlochVector::z_axis(),
                                             BlochVector::z_axis(), ReversalPolicy::all_branches,
                                             rng);
                if (trial.status == RecoveryStatus::matched) ++matched;
            }
            const double expected = reversibility(pa, pb);
            const double freq = static_cast<double>(matched) / trials;
            const double se = std::sqrt(expected * (1.0 - expected) / trials);
            c.require(std::abs(freq - expected) < 4.0 * se,
                      "(" + num(pa) + "," + num(pb) + "): freq " + num(freq) + " vs R " +
                          num(expected) + " (4se " + num(4.0 * se) + ")");
        }
}

void criterion5_recovery_exactness() {
    Criterion c("5. recovery exactness (fidelity 1, scaled-identity Kraus)", 5.0);
    RngStream rng(77, 0);
    const Outcome outcomes[2] = {Outcome::plus, Outcome::minus};
    for (int rep = 0; rep < 1000; ++rep) {
        const double pa = rng.next_double() * 0.999;
        const double pb = rng.next_double() * 0.999;
        const double za = 2.0 * rng.next_double() - 1.0;
        const double phia = 2.0 * std::numbers::pi * rng.next_double();
        const double zb = 2.0 * rng.next_double() - 1.0;
        const double phib = 2.0 * std::numbers::pi * rng.next_double();
        const BlochVector ra = BlochVector::normalized(
            std::sqrt(1.0 - za * za) * std::cos(phia), std::sqrt(1.0 - za * za) * std::sin(phia),
            za);
        const BlochVector rb = BlochVector::normalized(
            std::sqrt(1.0 - zb * zb) * std::cos(phib), std::sqrt(1.0 - zb * zb) * std::sin(phib),
            zb);
        const Outcome la = outcomes[rng.next_u64() & 1];
        const Outcome lb = outcomes[rng.next_u64() & 1];

        const WeakMeasurement ma(pa, ra);
        const WeakMeasurement mb(pb, rb);
        const Mat2 ka = reversal_operator(ReversalMeasurement::matching(ma), la) *
                        weak_operator(ma, la);
        const Mat2 kb = reversal_operator(ReversalMeasurement::matching(mb), lb) *
                        weak_operator(mb, lb);

        const double scale = std::sqrt((1.0 - pa * pa) * (1.0 - pb * pb)) / 4.0;
        c.require(max_abs_diff(tensor_product(ka, kb), scale * identity4()) < 1e-10,
                  "Kraus composition deviates from the scaled identity");

        const auto recovered = apply_measurement(kBell, ka, kb);
        const double fidelity =
            fidelity_with_pure(kBell, DensityMatrix::from_pure(recovered.state));
        c.require(std::abs(fidelity - 1.0) < 1e-10, "matched fidelity " + num(fidelity));
    }
}

void criterion6_quality_curves() {
    Criterion c("6. quality curves: monotone Fbar/Ebar, Pbar = 1, recovery = 1", 10.0);
    for (const bool use_chsh_plan : {false, true}) {
        const AveragingPlan plan =
            use_chsh_plan ? AveragingPlan::chsh_plan() : AveragingPlan::witness_plan();
        const auto rows = sweep_recovery(SweepGrid::linspace(0.0, 1.0, 21), kBellRho, kBell, plan,
                                         0, ReversalPolicy::all_branches, RngStream(0, 0));
        c.require(std::abs(rows.front().fidelity_before - 1.0) < 1e-10, "Fbar(0) != 1");
        c.require(std::abs(rows.front().eof_before - 1.0) < 1e-10, "Ebar(0) != 1");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            c.require(std::abs(rows[i].purity_before - 1.0) < 1e-10,
                      "Pbar(" + num(rows[i].p) + ") != 1");
            if (i > 0) {
                c.require(rows[i].fidelity_before <= rows[i - 1].fidelity_before + 1e-12,
                          "Fbar increased at p = " + num(rows[i].p));
                c.require(rows[i].eof_before <= rows[i - 1].eof_before + 1e-12,
                          "Ebar increased at p = " + num(rows[i].p));
            }
            if (rows[i].p < 1.0) {
                c.require(std::abs(rows[i].fidelity_after - 1.0) < 1e-10 &&
                              std::abs(rows[i].eof_after - 1.0) < 1e-10 &&
                              std::abs(rows[i].purity_after - 1.0) < 1e-10,
                          "post-recovery quality off 1 at p = " + num(rows[i].p));
            }
        }
        if (!use_chsh_plan)
            c.require(std::abs(rows.back().eof_before) < 1e-10, "Ebar(1) != 0 (witness plan)");
    }
}

void criterion7_source_monitoring() {
    Criterion c("7. drifting-source selection (ordering + exact gate)", 60.0);

    // Sampled gating with the documented defaults at seed 0.
    SelectionConfig sampled;
    OUProcess process;
    const auto report = run_monitoring(sampled, process, 500, RngStream(0, 0));
    c.require(report.selected_count > 0, "no window selected");
    c.require(report.selected_count < 500, "every window selected");
    c.require(report.s_selected > 2.0, "selected-ensemble S = " + num(report.s_selected));
    c.require(report.s_selected > report.s_all,
              "selected " + num(report.s_selected) + " <= all " + num(report.s_all));

    // Exact gate: selection is precisely gamma < 0.2 and S is analytic.
    SelectionConfig exact;
    exact.exact = true;
    const auto exact_report = run_monitoring(exact, process, 500, RngStream(0, 0));
    for (const auto& w : exact_report.windows) {
        c.require(w.selected == (w.gamma < 0.2),
                  "gate mismatch at gamma = " + num(w.gamma));
        c.require(std::abs(w.s - std::numbers::sqrt2 * (2.0 - w.gamma)) < 1e-9,
                  "window S deviates from sqrt(2)(2 - gamma)");
    }
    c.require(exact_report.s_selected > 2.0 && exact_report.s_selected > exact_report.s_all,
              "exact-mode ordering violated");
}

void criterion8_estimator_convergence() {
    Criterion c("8. sampled statistics within 4 se of exact (20 seeds, 2 states)", 60.0);
    const long shots = 100000;
    const DensityMatrix states[2] = {kBellRho, mixed_state(0.3)};
    const char* names[2] = {"ideal", "mixed(0.3)"};
    for (int s = 0; s < 2; ++s) {
        const double exact_w = witness_weak(states[s], 0.7, 0.7).statistic;
        const double exact_s3 = steering(states[s], 0.7, 0.7, TrustedSide::bob).statistic;
        const double exact_chsh = chsh(states[s], 1.0, 1.0).statistic;
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            const auto w =
                certify_sampled(states[s], Test::witness, 0.7, 0.7, shots, RngStream(rep, 3 * s));
            c.require(std::abs(w.statistic - exact_w) < 4.0 * w.standard_error,
                      std::string(names[s]) + " witness rep " + num(rep));
            const auto s3 = certify_sampled(states[s], Test::steering_a_to_b, 0.7, 0.7, shots,
                                            RngStream(rep, 3 * s + 1));
            c.require(std::abs(s3.statistic - exact_s3) < 4.0 * s3.standard_error,
                      std::string(names[s]) + " steering rep " + num(rep));
            const auto bell = certify_sampled(states[s], Test::chsh, 1.0, 1.0, shots,
                                              RngStream(rep, 3 * s + 2));
            c.require(std::abs(bell.statistic - exact_chsh) < 4.0 * bell.standard_error,
                      std::string(names[s]) + " chsh rep " + num(rep));
        }
    }
}

void criterion9_tomography_closure() {
    Criterion c("9. tomography closure on 100 random states (1e-10)", 5.0);
    RngStream rng(31415, 0);
    for (int rep = 0; rep < 100; ++rep) {
        Mat4 g;
        for (auto& x : g.e) x = Complex(rng.next_normal(), rng.next_normal());
        Mat4 h = g * g.adjoint();
        const DensityMatrix rho((1.0 / h.trace().real()) * h);
        const DensityMatrix rebuilt = tomography_linear_inversion(exact_expectations(rho));
        c.require(max_abs_diff(rebuilt.m, rho.m) < 1e-10,
                  "max entry error " + num(max_abs_diff(rebuilt.m, rho.m)));
    }
}

}  // namespace

int main() {
    std::printf("entanglecert acceptance suite\n");
    criterion1_witness_strength_independence();
    criterion2_steering_boundary();
    criterion3_chsh_boundary();
    criterion4_reversibility_monte_carlo();
    criterion5_recovery_exactness();
    criterion6_quality_curves();
    criterion7_source_monitoring();
    criterion8_estimator_convergence();
    criterion9_tomography_closure();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", failures);
    return failures;
}
