#pragma once

#include <optional>

#include "irsa/density_evolution.hpp"
#include "irsa/distribution.hpp"
#include "irsa/error_profile.hpp"

namespace irsa {

// Load-threshold search parameters. The search brackets must satisfy:
// the recursion converges to p_inf <= P_E|1(1+e) at g_lo and fails at g_hi.
struct ThresholdQuery {
    IrsaDistribution dist = IrsaDistribution({1.0});
    ErrorProfile errors = ErrorProfile::zeros(1);
    double e = 0.5;           // floor-slack parameter, target p_inf <= P_E|1(1+e)
    double g_lo = 1e-3;
    double g_hi = 10.0;
    double g_tolerance = 1e-3;
    double sic_efficiency = 1.0;
    int max_iters = 100000;
    double fp_tolerance = 1e-12;

    void validate() const;
};

// Whether the recursion at load g reaches the target range [0, P_E|1(1+e)].
// An absolute slack of 1e-10 absorbs the zero-error collision case where the
// exact target is 0 but the iteration stops at the fixed-point tolerance.
bool de_converges(const ThresholdQuery& q, double g);

// Asymptotic threshold G*(Lambda, T, P_E; e) by bisection with the density
// evolution recursion as oracle. Throws BracketError on an invalid bracket.
double threshold_gmac(const ThresholdQuery& q);

// Smallest load (within resolution) at which a second crossing of
// f_s(f_b(p)) = p appears at p > P_E|1(1+e_probe); empty if none up to g_hi.
std::optional<double> g0_onset(const IrsaDistribution& dist, const ErrorProfile& errors,
                               double g_hi, double e_probe = 0.5, double resolution = 1e-3);

// Convergence boundary over the collision channel: unique positive root of
// G/T = 1 - (1/T) e^{-G/eta} sum_{k=0..T-1} ((T-k)/k!) (G/eta)^k.
double boundary_collision(double eta, int t_mpr);

// Convergence-boundary query for the GMAC with decoding errors.
struct BoundaryQuery {
    double eta = 0.5;      // protocol efficiency, in (0,1]
    double lambda1 = 0.0;  // probability of a single replica
    int t_mpr = 1;
    ErrorProfile errors = ErrorProfile::zeros(1);
    double e = 0.0;

    void validate() const;
};

enum class BindingBound { G1, G2 };

struct BoundaryResult {
    double g_cb = 0.0;  // min(g1, g2)
    BindingBound binding = BindingBound::G1;
    double g1 = 0.0;
    double g2 = 0.0;  // +inf when lambda1 = 0
};

// Solves the two converse-bound equations and returns the binding minimum.
// Throws DomainError when eta exceeds the admissible cap or the area bound
// does not apply (P_E|1(1+e) >= 0.5).
BoundaryResult boundary_gmac(const BoundaryQuery& q);

// Closed-form integral of f_s over [0,1] at load g (perfect SIC).
double fs_integral(const IrsaDistribution& dist, const ErrorProfile& errors, double g);

// Open-tunnel necessary condition for convergence to p_inf <= P_E|1(1+e):
// int_0^1 f_s + eta - eta[L1 P1(1+e) + (1-L1) P1^2 (1+e)^2] <= 1.
bool open_tunnel_check(const IrsaDistribution& dist, const ErrorProfile& errors, double g,
                       double e);

// Packet-loss floor bound sum_d Lambda_d [P_E|1 (1+e)]^d.
double floor_bound(const IrsaDistribution& dist, double p_e1, double e);

}  // namespace irsa
