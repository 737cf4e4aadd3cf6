#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entanglecert/measurement.hpp"

namespace entanglecert {

/// The three certification tests, with steering split by trust direction.
enum class Test { witness, steering_a_to_b, steering_b_to_a, chsh };

std::string test_name(Test t);
std::optional<Test> test_from_name(const std::string& name);

/// One raw outcome correlation <mu_A mu_B>. shots == 0 flags an exact
/// (trace-evaluated) value with zero standard error.
struct CorrelationEstimate {
    double value = 0.0;
    long shots = 0;
    double standard_error = 0.0;
};

/// Result of one certification test at fixed strengths.
struct CertificationResult {
    Test test = Test::witness;
    double statistic = 0.0;
    double threshold = 0.0;
    bool certified = false;
    double strength_a = 0.0;
    double strength_b = 0.0;
    double standard_error = 0.0;  ///< quadrature-propagated; 0 in exact mode
    std::vector<CorrelationEstimate> correlations;  ///< per setting, in setting order
};

/// <mu_A mu_B> = tr(rho (mu_A (x) mu_B)); equals sum_l lA lB P(lA, lB).
double correlation(const DensityMatrix& state, const WeakMeasurement& a,
                   const WeakMeasurement& b);

/// Pauli correlations along the witness directions; absent entries signal
/// MissingDirection when consumed.
struct PauliCorrelations {
    std::optional<double> x;
    std::optional<double> y;
    std::optional<double> z;
};

/// W = 1/4 - (c_x - c_y + c_z)/4 from projective Pauli correlations.
double witness_from_pauli(const PauliCorrelations& c);

/// Witness with strength compensation: W = 1/4 - sum w_r <mu mu> / (4 pA pB).
/// Requires pA, pB > 0 (ZeroStrength otherwise). Certified iff W < 0.
CertificationResult witness_weak(const DensityMatrix& state, double pa, double pb);

enum class TrustedSide { bob, alice };

/// Steering statistic S3 with compensation on the trusted side only.
/// BobTrusted: S3 = sum w_r <mu mu> / (3 pB), certified iff S3 > 1/sqrt(3).
/// AliceTrusted swaps the roles. ZeroStrength if the trusted strength is 0.
CertificationResult steering(const DensityMatrix& state, double pa, double pb,
                             TrustedSide trusted);

/// CHSH with raw weak observables (no trust, no compensation): Alice settings
/// z, x; Bob settings (z+x)/sqrt(2), (z-x)/sqrt(2). Certified iff S > 2.
CertificationResult chsh(const DensityMatrix& state, double pa, double pb);

/// Outcome counts for one setting, indexed by (l_A, l_B).
struct OutcomeCounts {
    long pp = 0;
    long pm = 0;
    long mp = 0;
    long mm = 0;

    long total() const { return pp + pm + mp + mm; }
};

/// value = (N++ + N-- - N+- - N-+)/N, se = sqrt((1 - value^2)/N).
/// Throws EmptyCounts when N == 0.
CorrelationEstimate estimate_correlation(const OutcomeCounts& counts);

/// The measurement setting pairs a test consumes, in statistic order
/// (D = 3 for witness/steering, D = 4 for CHSH).
std::vector<std::pair<BlochVector, BlochVector>> settings_for(Test t);

/// Finite-shot certification: samples `shots_per_setting` outcome pairs per
/// setting (setting k drawing from rng.split(k)), estimates the correlations
/// and assembles the same statistic as the exact path, with standard errors
/// combined in quadrature.
CertificationResult certify_sampled(const DensityMatrix& state, Test test, double pa,
                                    double pb, long shots_per_setting, RngStream rng);

}  // namespace entanglecert
