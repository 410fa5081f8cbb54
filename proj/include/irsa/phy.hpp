#pragma once

#include <functional>
#include <vector>

#include "irsa/error_profile.hpp"

namespace irsa {

// Finite-blocklength channel parameters, bits per channel use.
struct ChannelStats {
    double capacity = 0.0;
    double dispersion = 0.0;
};

// Real AWGN channel: C = (1/2)log2(1+snr),
// V = (1/2)(log2 e)^... dispersion per the Gaussian-input closed form.
ChannelStats awgn_stats(double snr);

// Binary-input modulo-2 AWGN channel seen by the inner linear code after
// folding of superimposed antipodal signals; C and V by numerical
// integration of the information density against the wrapped noise pdf.
ChannelStats mod2_stats(double snr);

// Wrapped Gaussian density on [0,2): sum_i N(x - 2i; 0, sigma^2).
double wrapped_gaussian_pdf(double x, double sigma);

// Gaussian finite-blocklength approximation
// P_E = Q( sqrt(n/V) (C - log2Mp/n + log2(n)/(2n)) ), clamped to [0,1].
double normal_approx_pe(const ChannelStats& stats, int n_eff, double log2_m_prime);

// Slot-level PHY configuration.
struct PhyConfig {
    int n = 0;               // slot length in channel uses
    double log2_m = 0.0;     // message size k = log2 M in bits
    int redundancy_r = 0;    // error-detection parity bits
    int t_mpr = 1;
    double snr = 0.0;        // P / sigma^2, linear
    int n_pilots = 0;

    void validate() const;
    double log2_m_prime_option1() const { return log2_m + redundancy_r; }           // M' = M 2^r
    double log2_m_prime_option2() const { return log2_m * t_mpr + redundancy_r; }   // k' = kT + r
};

// Per-user message-error model F1(n, log2M', snr, t) for t colliding users.
using F1Model = std::function<double(int n, double log2_m_prime, double snr, int t)>;

// Default surrogate for the random-coding bound: the t-user sum-rate normal
// approximation, Q evaluated at capacity/dispersion of snr' = t*snr against
// the aggregate rate t*log2M'/n. At t = 1 this is exactly
// normal_approx_pe(awgn_stats(snr), n, log2M'), including the single-user
// log2(n)/(2n) rate refinement; the refinement has no multi-user counterpart
// and is omitted for t > 1.
F1Model default_f1_surrogate();

// Option 1 profile: P_E|t = min(1, t * F1(n - n_p, M', snr, t)), forced
// nondecreasing in t by a running maximum.
ErrorProfile option1_profile(const PhyConfig& cfg, const F1Model& surrogate = default_f1_surrogate());

// Option 2 profile: constant P_E from the normal approximation at rate
// (kT + r)/(n - n_p); AWGN stats for T = 1, modulo-2 stats for T > 1.
// rate_multiplier scales the aggregate PHY rate (multilayer extensions).
ErrorProfile option2_profile(const PhyConfig& cfg, double rate_multiplier = 1.0);

// Failure probability of the energy-based estimator of the number of
// transmissions in a slot; exact via the chi-squared CDF. t >= 0 (0 = idle).
double energy_estimator_failure(int t, double snr, int n);

// Failure probability of the pilot-based ML estimator:
// erfc( sqrt(n_p * snr / 8) ), independent of t.
double pilot_estimator_failure(int n_pilots, double snr);

struct EstimatorModel {
    enum class Kind { Perfect, EnergyBased, PilotBased };
    Kind kind = Kind::Perfect;
    std::vector<double> failure_probs;  // P_F|t, t = 1..T

    static EstimatorModel perfect(int t_mpr);
    static EstimatorModel energy_based(int t_mpr, double snr, int n);
    static EstimatorModel pilot_based(int t_mpr, int n_pilots, double snr);
};

// Combined profile with estimation failures:
// P~_E|t = base_t + P_F|t (1 - base_t); base must already be computed at the
// effective blocklength n - n_p.
ErrorProfile effective_profile(const ErrorProfile& base, const EstimatorModel& est,
                               const PhyConfig& cfg);

// P/sigma^2 = (2 eta log2M / n) * 10^(ebno_db/10)  and its inverse.
double snr_from_ebno(double ebno_db, double eta, double log2_m, int n);
double ebno_from_snr(double snr, double eta, double log2_m, int n);

}  // namespace irsa
