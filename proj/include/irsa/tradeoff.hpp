#pragma once

#include <optional>
#include <vector>

#include "irsa/distribution.hpp"
#include "irsa/phy.hpp"

namespace irsa {

enum class PhyOption { Option1, Option2, Option2TwoLayer };

// Scenario for achievable-Eb/N0 evaluation. A concrete protocol (dist set)
// drives the density-evolution threshold; without one, the query is a
// boundary class identified by (lambda1, t_mpr).
struct ScenarioSpec {
    double log2_m = 100.0;
    double target_eps = 0.005;
    PhyOption phy_option = PhyOption::Option1;
    int t_mpr = 1;
    std::optional<IrsaDistribution> dist;
    double lambda1 = 0.0;

    // Parity bits of the error-detection code; negative selects the
    // undetected-error sizing rule r = ceil(log2(10/eps)).
    int redundancy_r = -1;
    // Aggregate-rate multiplier for the 2-layer option-2 extension
    // (user-supplied; the basic scheme is 1).
    double rate_multiplier = 1.0;

    // Search knobs. Empty grids select the defaults: a geometric slot-length
    // grid 50..5000 (x1.15) or divisors of frame_n in finite mode, the slack
    // grid {0.05,0.1,0.25,0.5,1.0,1.5} (boundary mode also tries e = 0), and
    // a uniform efficiency grid up to the structural cap 1/(2 - lambda1).
    std::vector<int> n_grid;
    std::vector<double> e_grid;
    int eta_grid_points = 25;
    double ebno_lo_db = -2.0;
    double ebno_hi_db = 30.0;
    double ebno_tol_db = 0.01;
    // Density-evolution controls for threshold-mode feasibility checks.
    int de_max_iters = 20000;
    double de_fp_tolerance = 1e-12;

    void validate() const;
    int effective_redundancy() const;
};

struct TradeoffPoint {
    double x = 0.0;        // spectrum efficiency S or K_a
    double ebno_db = 0.0;
    int n_opt = 0;
    double e_opt = 0.0;
    double eta_opt = 0.0;
    bool feasible = false;
};

// Minimal Eb/N0 such that some (n, e) keeps the load below the protocol's
// density-evolution threshold and the error floor below target_eps.
// Throws InfeasibleError when no point in the bracket qualifies.
TradeoffPoint achievable_ebno_asymptotic(const ScenarioSpec& spec, double s);

// Minimal Eb/N0 on the convergence boundary of the (lambda1, T) class, with
// slot length, efficiency and slack free.
TradeoffPoint boundary_ebno(const ScenarioSpec& spec, double s);

// One point per spectrum efficiency; infeasible points are preserved.
std::vector<TradeoffPoint> sweep_spectrum(const ScenarioSpec& spec,
                                          const std::vector<double>& s_grid);

// Achievable Eb/N0 versus the number of active users at fixed frame size
// frame_n; slot lengths are restricted to divisors of frame_n.
std::vector<TradeoffPoint> sweep_ka(const ScenarioSpec& spec, const std::vector<int>& ka_grid,
                                    long frame_n);

// Profile builder shared with tests and the CLI.
ErrorProfile build_phy_profile(const ScenarioSpec& spec, int n, double snr);

// Default geometric slot-length grid 50..5000, ratio 1.15.
std::vector<int> default_n_grid();
// Divisors of frame_n within [50, 5000].
std::vector<int> divisor_n_grid(long frame_n);

}  // namespace irsa
