#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "entanglecert/monitor.hpp"
#include "entanglecert/run.hpp"

using namespace entanglecert;

TEST_CASE("OU step: zero volatility relaxes exponentially toward the mean") {
    OUProcess process;
    process.mean = 0.5;
    process.rate = 0.1;
    process.volatility = 0.0;
    process.dt = 1.0;
    process.value = 0.0;
    RngStream rng(0, 0);
    double expected = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double got = process.step(rng);
        expected += 0.1 * (0.5 - expected);
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(process.value == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("OU step: frozen process stays constant") {
    OUProcess process;
    process.mean = 0.4;
    process.rate = 0.0;
    process.volatility = 0.0;
    process.value = 0.2;
    RngStream rng(0, 0);
    for (int i = 0; i < 10; ++i) CHECK(process.step(rng) == doctest::Approx(0.2));
}

TEST_CASE("OU long-run statistics match the stationary distribution") {
    OUProcess process;
    process.mean = 0.5;
    process.rate = 0.05;
    process.volatility = 0.02;  // small enough that [0,1] clamping never bites
    process.value = 0.5;
    RngStream rng(1, 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += process.step(rng);
    const double mean = sum / n;
    // Stationary sd = sigma/sqrt(2 theta - theta^2 dt); autocorrelation gives
    // n_eff ~ n * theta / 2.
    const double sd = process.volatility / std::sqrt(2.0 * process.rate);
    const double n_eff = n * process.rate / 2.0;
    CHECK(std::abs(mean - 0.5) < 3.0 * sd / std::sqrt(n_eff));
}

TEST_CASE("OU values stay clamped to [0,1]") {
    OUProcess process;
    process.mean = 0.0;
    process.rate = 0.01;
    process.volatility = 0.5;
    process.value = 0.5;
    RngStream rng(2, 0);
    for (int i = 0; i < 2000; ++i) {
        const double v = process.step(rng);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("mixed state: endpoints, boundary witness, concurrence") {
    const DensityMatrix ideal = mixed_state(0.0);
    CHECK(max_abs_diff(ideal.m, DensityMatrix::from_pure(PureState::bell_phi_plus()).m) < 1e-15);

    const DensityMatrix classical = mixed_state(1.0);
    CHECK(classical.m(0, 0).real() == doctest::Approx(0.5));
    CHECK(classical.m(3, 3).real() == doctest::Approx(0.5));
    CHECK(std::abs(classical.m(0, 3)) < 1e-15);
    CHECK(concurrence(classical) == doctest::Approx(0.0).epsilon(1e-9));

    // The selection boundary: gamma = 0.2 sits exactly at W = -0.4.
    CHECK(witness_weak(mixed_state(0.2), 0.7, 0.7).statistic ==
          doctest::Approx(-0.4).epsilon(1e-12));
    for (double gamma : {0.1, 0.5, 0.9})
        CHECK(concurrence(mixed_state(gamma)) == doctest::Approx(1.0 - gamma).epsilon(1e-7));

    CHECK_THROWS_AS(mixed_state(1.2), OutOfRange);
}

TEST_CASE("monitoring a perfect source selects every window at S = 2 sqrt 2") {
    SelectionConfig config;
    config.exact = true;
    OUProcess frozen;
    frozen.mean = 0.0;
    frozen.rate = 0.0;
    frozen.volatility = 0.0;
    frozen.value = 0.0;
    const auto report = run_monitoring(config, frozen, 40, RngStream(0, 0));
    CHECK(report.selected_count == 40);
    CHECK(report.s_selected == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-9));
    CHECK(report.s_all == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-9));
    for (const auto& w : report.windows) {
        CHECK(w.selected);
        CHECK(w.witness == doctest::Approx(-0.5).epsilon(1e-12));
    }
}

TEST_CASE("monitoring a dead source selects nothing") {
    SelectionConfig config;
    config.exact = true;
    OUProcess frozen;
    frozen.mean = 1.0;
    frozen.rate = 0.0;
    frozen.volatility = 0.0;
    frozen.value = 1.0;
    const auto report = run_monitoring(config, frozen, 20, RngStream(0, 0));
    CHECK(report.selected_count == 0);
    CHECK(std::isnan(report.s_selected));
    for (const auto& w : report.windows) CHECK(w.witness == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("exact gate selects exactly the windows with gamma below 0.2") {
    SelectionConfig config;
    config.exact = true;
    OUProcess process;  // defaults: mu 0.3, theta 0.05, sigma 0.05
    const auto report = run_monitoring(config, process, 300, RngStream(11, 0));
    for (const auto& w : report.windows) {
        CHECK(w.selected == (w.gamma < 0.2));
        // Analytic per-window Bell value of the decohered family.
        CHECK(w.s == doctest::Approx(std::numbers::sqrt2 * (2.0 - w.gamma)).epsilon(1e-9));
        CHECK(w.witness == doctest::Approx((w.gamma - 1.0) / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("selection never lowers the ensemble Bell value") {
    SelectionConfig config;
    config.exact = true;
    OUProcess process;
    const auto report = run_monitoring(config, process, 400, RngStream(12, 0));
    REQUIRE(report.selected_count > 0);
    REQUIRE(report.selected_count < 400);
    CHECK(report.s_selected >= report.s_all);
}

TEST_CASE("sampled gating tracks the exact gate near the boundary") {
    SelectionConfig sampled;
    sampled.window_shots = 20000;
    OUProcess process;
    const auto report = run_monitoring(sampled, process, 100, RngStream(13, 0));
    int disagreements = 0;
    for (const auto& w : report.windows) {
        CHECK(w.witness_se > 0.0);
        if (w.selected != (w.gamma < 0.2)) ++disagreements;
        // Sampled witness within 5 standard errors of the analytic value.
        CHECK(std::abs(w.witness - (w.gamma - 1.0) / 2.0) < 5.0 * w.witness_se);
    }
    // Only windows hugging the boundary can flip.
    CHECK(disagreements < 20);
}

TEST_CASE("monitoring reports are byte-for-byte reproducible") {
    RunConfig config;
    config.command = Command::monitor;
    config.windows = 60;
    config.seed = 7;
    const ResultTable a = run_command(config);
    const ResultTable b = run_command(config);
    std::ostringstream sa;
    std::ostringstream sb;
    emit_csv(a, sa);
    emit_csv(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("nan") == std::string::npos);
}
