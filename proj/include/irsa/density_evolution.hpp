#pragma once

#include <utility>
#include <vector>

#include "irsa/distribution.hpp"
#include "irsa/error_profile.hpp"

namespace irsa {

// Parameters of the asymptotic SIC recursion p_l = f_s(f_b(p_{l-1})).
struct DeParams {
    IrsaDistribution dist;
    ErrorProfile errors;
    double g = 0.0;                // average load, packets/slot
    double sic_efficiency = 1.0;   // gamma in (0,1], 1 = ideal cancellation
    int max_iters = 10000;
    double fp_tolerance = 1e-12;

    void validate() const;
};

// Slot-node update over the noiseless collision channel:
// p = 1 - exp(-g*dbar*q) * sum_{t=0..T-1} (g*dbar*q)^t / t!
double fs_collision(double q, double g, double mean_deg, int t_mpr);

// Slot-node update over the GMAC with decoding errors; with
// sic_efficiency < 1 the exponent becomes -g*dbar*(1-gamma+gamma*q).
double fs_gmac(double q, const DeParams& params);

// User-node update q = Lambda'(p) / dbar.
double fb(double p, const IrsaDistribution& dist);

// Derivative of the GMAC slot-node update (perfect SIC only):
// f_s'(q) = g*dbar*exp(-g*dbar*q) * sum_t (P_E|t+1 - P_E|t)(g*dbar*q)^{t-1}/(t-1)!
double fs_derivative(double q, const DeParams& params);

enum class DeStopReason { FixedPoint, MaxIters };

struct DeState {
    std::vector<std::pair<double, double>> trajectory;  // (p_l, q_l), l = 0,1,...
    double p_infinity = 1.0;
    DeStopReason converged_reason = DeStopReason::MaxIters;
};

// Runs the recursion from p_0 = f_s(1) until |p_l - p_{l-1}| < fp_tolerance
// or max_iters, recording the full trajectory.
DeState run_de(const DeParams& params);

// Trajectory-free variant used by solvers; returns (p_infinity, reason).
std::pair<double, DeStopReason> de_fixed_point(const DeParams& params);

// Asymptotic packet loss probability P_L = sum_d Lambda_d p_inf^d.
double asymptotic_plr(double p_inf, const IrsaDistribution& dist);

// Uniformly sampled EXIT-chart curves over [0,1].
struct ExitChartData {
    std::vector<double> p, fb_of_p;  // user-node curve q = f_b(p)
    std::vector<double> q, fs_of_q;  // slot-node curve p = f_s(q)
};
ExitChartData exit_chart(const DeParams& params, int samples);

// Roots of f_s(f_b(p)) - p in (0,1], located by a 1000-interval scan plus
// bisection to 1e-10. These are the EXIT-chart crossing points.
std::vector<double> exit_crossings(const DeParams& params);

enum class StabilityVerdict { ConditionA, ConditionB, Neither };

struct StabilityReport {
    StabilityVerdict verdict = StabilityVerdict::Neither;
    // Condition (b) data, reported so callers can judge the heuristic margin:
    // gap = P_E|2 - P_E|1, bound = 0.1 / (2 Lambda_2 g_max).
    double gap = 0.0;
    double bound = 0.0;
};

// Sufficient conditions for the SIC process to converge near P_E|1:
// (a) dmin >= 3, or (b) dmin = 2, T >= 2 and P_E|2 - P_E|1 << 1/(2 Lambda_2 G0),
// with "<<" operationalized as a factor-0.1 margin and g_max standing in for G0.
StabilityReport stability_check(const IrsaDistribution& dist, const ErrorProfile& errors,
                                double g_max);

}  // namespace irsa
