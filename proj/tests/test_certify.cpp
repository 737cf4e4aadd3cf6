#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entanglecert/certify.hpp"
#include "entanglecert/monitor.hpp"
#include "test_helpers.hpp"

using namespace entanglecert;
using entanglecert::testing::random_direction;

namespace {

const DensityMatrix kBellRho = DensityMatrix::from_pure(PureState::bell_phi_plus());

}  // namespace

TEST_CASE("correlation: trace route matches the outcome-sum route") {
    // Bell state, full strength, matched z directions.
    CHECK(correlation(kBellRho, WeakMeasurement(1.0, BlochVector::z_axis()),
                      WeakMeasurement(1.0, BlochVector::z_axis())) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // Strengths factor out: 0.5 * 0.8 = 0.4.
    CHECK(correlation(kBellRho, WeakMeasurement(0.5, BlochVector::z_axis()),
                      WeakMeasurement(0.8, BlochVector::z_axis())) ==
          doctest::Approx(0.4).epsilon(1e-12));

    // The Bell state's y-y correlation is -1.
    CHECK(correlation(kBellRho, WeakMeasurement(1.0, BlochVector::y_axis()),
                      WeakMeasurement(1.0, BlochVector::y_axis())) ==
          doctest::Approx(-1.0).epsilon(1e-12));

    // Route equivalence on random settings: sum_l lA lB P(lA,lB).
    RngStream rng(41, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const WeakMeasurement ma(rng.next_double(), random_direction(rng));
        const WeakMeasurement mb(rng.next_double(), random_direction(rng));
        double outcome_sum = 0.0;
        for (Outcome la : {Outcome::plus, Outcome::minus})
            for (Outcome lb : {Outcome::plus, Outcome::minus})
                outcome_sum += outcome_sign(la) * outcome_sign(lb) *
                               joint_outcome_probability(kBellRho, ma, mb, la, lb);
        CHECK(std::abs(outcome_sum - correlation(kBellRho, ma, mb)) < 1e-12);
    }
}

TEST_CASE("witness from projective Pauli correlations") {
    CHECK(witness_from_pauli({1.0, -1.0, 1.0}) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(witness_from_pauli({0.0, 0.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(witness_from_pauli({0.0, 0.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(witness_from_pauli({1.0, std::nullopt, 1.0}), MissingDirection);
}

TEST_CASE("weak witness: strength compensation is exact") {
    const auto result = witness_weak(kBellRho, 0.3, 0.9);
    CHECK(result.statistic == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(result.certified);
    CHECK(result.threshold == 0.0);

    // Identical for any strength pair on a fixed state.
    for (int i = 1; i <= 10; ++i) {
        const double p = i / 10.0;
        CHECK(std::abs(witness_weak(kBellRho, p, p).statistic + 0.5) < 1e-12);
        CHECK(std::abs(witness_weak(kBellRho, p, 1.0 - p * 0.5).statistic + 0.5) < 1e-12);
    }
}

TEST_CASE("weak witness: compensation is strength-free on arbitrary states") {
    RngStream rng(43, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = entanglecert::testing::random_density_matrix(rng);
        const double reference = witness_weak(rho, 1.0, 1.0).statistic;
        for (int i = 1; i <= 10; ++i) {
            const double p = i / 10.0;
            CHECK(std::abs(witness_weak(rho, p, p).statistic - reference) < 1e-12);
        }
        const double pa = 0.05 + 0.95 * rng.next_double();
        const double pb = 0.05 + 0.95 * rng.next_double();
        CHECK(std::abs(witness_weak(rho, pa, pb).statistic - reference) < 1e-12);
    }
}

TEST_CASE("weak witness on decohered and mixed states") {
    CHECK(witness_weak(mixed_state(0.2), 0.7, 0.4).statistic ==
          doctest::Approx(-0.4).epsilon(1e-12));
    const auto mixed = witness_weak(DensityMatrix::maximally_mixed(), 0.5, 0.5);
    CHECK(mixed.statistic == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(mixed.certified);
}

TEST_CASE("weak witness rejects zero strength") {
    CHECK_THROWS_AS(witness_weak(kBellRho, 0.0, 0.5), ZeroStrength);
    CHECK_THROWS_AS(witness_weak(kBellRho, 0.5, 0.0), ZeroStrength);
}

TEST_CASE("steering: statistic equals the untrusted strength on the Bell state") {
    const auto ab = steering(kBellRho, 0.8, 0.5, TrustedSide::bob);
    CHECK(ab.statistic == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(ab.threshold == doctest::Approx(std::numbers::inv_sqrt3).epsilon(1e-15));
    CHECK(ab.certified);
    CHECK(ab.test == Test::steering_a_to_b);
}

TEST_CASE("steering: one-way regime under role exchange") {
    const auto a_to_b = steering(kBellRho, 0.5, 0.8, TrustedSide::bob);
    CHECK(a_to_b.statistic == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(a_to_b.certified);

    const auto b_to_a = steering(kBellRho, 0.5, 0.8, TrustedSide::alice);
    CHECK(b_to_a.statistic == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(b_to_a.certified);
}

TEST_CASE("steering: maximally mixed state does not steer") {
    const auto result = steering(DensityMatrix::maximally_mixed(), 1.0, 1.0, TrustedSide::bob);
    CHECK(result.statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(result.certified);
}

TEST_CASE("steering rejects zero strength on the trusted side only") {
    CHECK_THROWS_AS(steering(kBellRho, 0.5, 0.0, TrustedSide::bob), ZeroStrength);
    CHECK_THROWS_AS(steering(kBellRho, 0.0, 0.5, TrustedSide::alice), ZeroStrength);
    CHECK_NOTHROW(steering(kBellRho, 0.0, 0.5, TrustedSide::bob));
}

TEST_CASE("CHSH: Tsirelson value and strength scaling") {
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    CHECK(chsh(kBellRho, 1.0, 1.0).statistic == doctest::Approx(tsirelson).epsilon(1e-12));

    const auto partial = chsh(kBellRho, 0.9, 0.8);
    CHECK(partial.statistic == doctest::Approx(tsirelson * 0.72).epsilon(1e-12));
    CHECK(partial.certified);  // 2.036 > 2

    // No compensation: scaling both strengths by c scales S by c^2.
    RngStream rng(42, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = entanglecert::testing::random_density_matrix(rng);
        const double s_full = chsh(rho, 1.0, 1.0).statistic;
        const double c = 0.1 + 0.9 * rng.next_double();
        CHECK(std::abs(chsh(rho, c, c).statistic - c * c * s_full) < 1e-12);
    }
}

TEST_CASE("CHSH on the decohered family: S = sqrt(2) (2 - gamma) pa pb") {
    for (double gamma : {0.0, 0.1, 0.3, 0.65, 1.0}) {
        CHECK(chsh(mixed_state(gamma), 1.0, 1.0).statistic ==
              doctest::Approx(std::numbers::sqrt2 * (2.0 - gamma)).epsilon(1e-12));
        // Partial strengths scale the raw statistic by pa*pb.
        CHECK(chsh(mixed_state(gamma), 0.9, 0.6).statistic ==
              doctest::Approx(std::numbers::sqrt2 * (2.0 - gamma) * 0.54).epsilon(1e-12));
    }
}

TEST_CASE("steering on the decohered family: S3 = pa (3 - 2 gamma)/3") {
    // Correlations diag(1-g, -(1-g), 1) give a weighted sum of pa pb (3 - 2g).
    for (double gamma : {0.0, 0.2, 0.5, 0.8})
        for (double pa : {0.3, 0.7, 1.0})
            CHECK(steering(mixed_state(gamma), pa, 0.9, TrustedSide::bob).statistic ==
                  doctest::Approx(pa * (3.0 - 2.0 * gamma) / 3.0).epsilon(1e-12));
}

TEST_CASE("certification boundaries on the ideal state") {
    // Steering certifies iff the untrusted strength exceeds 1/sqrt(3).
    const double s3_bound = std::numbers::inv_sqrt3;
    CHECK_FALSE(steering(kBellRho, s3_bound, 0.9, TrustedSide::bob).certified);
    CHECK(steering(kBellRho, s3_bound + 1e-9, 0.9, TrustedSide::bob).certified);

    // CHSH certifies iff pa*pb exceeds 1/sqrt(2).
    const double s_bound = 1.0 / std::numbers::sqrt2;
    CHECK_FALSE(chsh(kBellRho, 1.0, s_bound).certified);
    CHECK(chsh(kBellRho, 1.0, s_bound + 1e-9).certified);
}

TEST_CASE("correlation estimator from counts") {
    const auto perfect = estimate_correlation({50, 0, 0, 50});
    CHECK(perfect.value == doctest::Approx(1.0));
    CHECK(perfect.standard_error == doctest::Approx(0.0));
    CHECK(perfect.shots == 100);

    const auto flat = estimate_correlation({25, 25, 25, 25});
    CHECK(flat.value == doctest::Approx(0.0));
    CHECK(flat.standard_error == doctest::Approx(0.1).epsilon(1e-12));

    const auto weak = estimate_correlation({34, 16, 16, 34});
    CHECK(weak.value == doctest::Approx(0.36).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_correlation({0, 0, 0, 0}), EmptyCounts);
}

TEST_CASE("sampled certification matches the exact statistics at high shot counts") {
    const long shots = 100000;

    const auto w = certify_sampled(kBellRho, Test::witness, 0.7, 0.7, shots, RngStream(1, 0));
    CHECK(std::abs(w.statistic + 0.5) < 0.01);
    CHECK(w.standard_error > 0.0);
    CHECK(w.standard_error < 0.01);
    CHECK(w.correlations.size() == 3);
    CHECK(w.correlations[0].shots == shots);

    const auto s = certify_sampled(kBellRho, Test::chsh, 1.0, 1.0, shots, RngStream(1, 1));
    CHECK(std::abs(s.statistic - 2.0 * std::numbers::sqrt2) < 0.01);
}

TEST_CASE("sampled steering at the boundary certifies about half the time") {
    const double boundary = std::numbers::inv_sqrt3;
    int certified = 0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        const auto result = certify_sampled(kBellRho, Test::steering_a_to_b, boundary, 0.9, 2000,
                                            RngStream(500 + rep, 0));
        if (result.certified) ++certified;
    }
    CHECK(certified > 8);
    CHECK(certified < 32);
}

TEST_CASE("sampled certification is deterministic per stream") {
    const auto a = certify_sampled(kBellRho, Test::chsh, 0.9, 0.9, 5000, RngStream(9, 4));
    const auto b = certify_sampled(kBellRho, Test::chsh, 0.9, 0.9, 5000, RngStream(9, 4));
    CHECK(a.statistic == b.statistic);
    CHECK(a.standard_error == b.standard_error);
}
