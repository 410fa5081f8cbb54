#include "irsa/tradeoff.hpp"

#include <algorithm>
#include <cmath>

#include "irsa/density_evolution.hpp"
#include "irsa/errors.hpp"
#include "irsa/threshold.hpp"

namespace irsa {

namespace {

constexpr double kDeSlack = 1e-10;

struct FeasiblePick {
    int n = 0;
    double e = 0.0;
    double eta = 0.0;
};

std::vector<double> default_e_grid(bool boundary_mode) {
    std::vector<double> grid{0.05, 0.1, 0.25, 0.5, 1.0, 1.5};
    if (boundary_mode) grid.insert(grid.begin(), 0.0);  // simplified e=0 evaluation
    return grid;
}

std::vector<double> eta_grid_for(const ScenarioSpec& spec) {
    const double eta_max = 1.0 / (2.0 - spec.lambda1);  // dmax = 2 extremal class
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(spec.eta_grid_points));
    for (int i = spec.eta_grid_points; i >= 1; --i) {
        grid.push_back(eta_max * static_cast<double>(i) / spec.eta_grid_points);
    }
    return grid;  // descending: the largest efficiency usually wins
}

}  // namespace

void ScenarioSpec::validate() const {
    if (!(log2_m >= 1.0)) throw ValidationError("scenario: log2M >= 1");
    if (!(target_eps > 0.0 && target_eps < 1.0)) throw ValidationError("scenario: eps in (0,1)");
    if (t_mpr < 1 || t_mpr > 64) throw ValidationError("scenario: T in [1,64]");
    if (!(lambda1 >= 0.0 && lambda1 < 1.0)) throw ValidationError("scenario: Lambda_1 in [0,1)");
    if (!(rate_multiplier > 0.0)) throw ValidationError("scenario: rate multiplier > 0");
    if (!(ebno_lo_db < ebno_hi_db)) throw ValidationError("scenario: Eb/N0 bracket empty");
    if (!(ebno_tol_db > 0.0)) throw ValidationError("scenario: Eb/N0 tolerance > 0");
    if (eta_grid_points < 1) throw ValidationError("scenario: eta grid needs >= 1 point");
}

int ScenarioSpec::effective_redundancy() const {
    if (redundancy_r >= 0) return redundancy_r;
    // Error-detection sizing: undetected-error probability 2^-r at least one
    // order of magnitude below the packet-loss target.
    return static_cast<int>(std::ceil(std::log2(10.0 / target_eps)));
}

std::vector<int> default_n_grid() {
    std::vector<int> grid;
    double x = 50.0;
    while (x <= 5000.0) {
        int n = static_cast<int>(std::lround(x));
        if (grid.empty() || grid.back() != n) grid.push_back(n);
        x *= 1.15;
    }
    if (grid.back() != 5000) grid.push_back(5000);
    return grid;
}

std::vector<int> divisor_n_grid(long frame_n) {
    std::vector<int> grid;
    for (long n = 50; n <= std::min<long>(5000, frame_n); ++n) {
        if (frame_n % n == 0) grid.push_back(static_cast<int>(n));
    }
    return grid;
}

ErrorProfile build_phy_profile(const ScenarioSpec& spec, int n, double snr) {
    PhyConfig cfg;
    cfg.n = n;
    cfg.log2_m = spec.log2_m;
    cfg.redundancy_r = spec.effective_redundancy();
    cfg.t_mpr = spec.t_mpr;
    cfg.snr = snr;
    cfg.n_pilots = 0;
    switch (spec.phy_option) {
        case PhyOption::Option1:
            return option1_profile(cfg);
        case PhyOption::Option2:
            return option2_profile(cfg);
        case PhyOption::Option2TwoLayer:
            return option2_profile(cfg, spec.rate_multiplier);
    }
    throw ValidationError("scenario: unknown PHY option");
}

namespace {

// Feasibility of one Eb/N0 for the boundary query at spectrum efficiency s.
bool boundary_feasible(const ScenarioSpec& spec, double s, double ebno_db, FeasiblePick* pick) {
    const auto n_grid = spec.n_grid.empty() ? default_n_grid() : spec.n_grid;
    const auto e_grid = spec.e_grid.empty() ? default_e_grid(true) : spec.e_grid;
    for (double eta : eta_grid_for(spec)) {
        for (int n : n_grid) {
            const double g = static_cast<double>(n) * s / spec.log2_m;
            if (!(g > 0.0)) continue;
            const double snr = snr_from_ebno(ebno_db, eta, spec.log2_m, n);
            ErrorProfile profile = [&]() -> ErrorProfile {
                try {
                    return build_phy_profile(spec, n, snr);
                } catch (const IntegrationError&) {
                    return ErrorProfile::uniform(spec.t_mpr, 1.0);
                }
            }();
            const double p1 = profile.at(1);
            for (double e : e_grid) {
                const double p1e = p1 * (1.0 + e);
                if (p1e >= 0.5) continue;  // outside the area-bound domain
                const double floor =
                    spec.lambda1 * p1e + (1.0 - spec.lambda1) * p1e * p1e;
                if (!(floor < spec.target_eps)) continue;
                BoundaryQuery query;
                query.eta = eta;
                query.lambda1 = spec.lambda1;
                query.t_mpr = spec.t_mpr;
                query.errors = profile;
                query.e = e;
                const double cap = (1.0 - p1) / (1.0 - floor);
                if (eta > cap) continue;
                BoundaryResult bound = boundary_gmac(query);
                if (g < bound.g_cb) {
                    if (pick) *pick = {n, e, eta};
                    return true;
                }
            }
        }
    }
    return false;
}

// Feasibility for a concrete protocol: error floor below eps and the DE
// recursion converging into the slack band at load g.
bool threshold_feasible(const ScenarioSpec& spec, double s, double ebno_db, FeasiblePick* pick) {
    const IrsaDistribution& dist = *spec.dist;
    const double eta = dist.efficiency();
    const auto n_grid = spec.n_grid.empty() ? default_n_grid() : spec.n_grid;
    const auto e_grid = spec.e_grid.empty() ? default_e_grid(false) : spec.e_grid;
    for (int n : n_grid) {
        const double g = static_cast<double>(n) * s / spec.log2_m;
        if (!(g > 0.0)) continue;
        const double snr = snr_from_ebno(ebno_db, eta, spec.log2_m, n);
        ErrorProfile profile = [&]() -> ErrorProfile {
            try {
                return build_phy_profile(spec, n, snr);
            } catch (const IntegrationError&) {
                return ErrorProfile::uniform(spec.t_mpr, 1.0);
            }
        }();
        const double p1 = profile.at(1);
        for (double e : e_grid) {
            if (!(floor_bound(dist, p1, e) < spec.target_eps)) continue;
            DeParams params{dist, profile, g, 1.0, spec.de_max_iters, spec.de_fp_tolerance};
            auto [p_inf, reason] = de_fixed_point(params);
            (void)reason;
            if (p_inf <= p1 * (1.0 + e) + kDeSlack) {
                if (pick) *pick = {n, e, eta};
                return true;
            }
        }
    }
    return false;
}

template <class Feasible>
TradeoffPoint minimize_ebno(const ScenarioSpec& spec, double x, const Feasible& feasible) {
    TradeoffPoint point;
    point.x = x;
    FeasiblePick pick;
    if (!feasible(spec.ebno_hi_db, &pick)) {
        throw InfeasibleError("tradeoff: infeasible even at " + std::to_string(spec.ebno_hi_db) +
                              " dB");
    }
    double hi = spec.ebno_hi_db;
    double lo = spec.ebno_lo_db;
    if (feasible(lo, &pick)) {
        hi = lo;  // already feasible at the bracket bottom
    } else {
        while (hi - lo > spec.ebno_tol_db) {
            double mid = 0.5 * (lo + hi);
            if (feasible(mid, nullptr)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    feasible(hi, &pick);  // record the optimizing configuration
    point.ebno_db = hi;
    point.n_opt = pick.n;
    point.e_opt = pick.e;
    point.eta_opt = pick.eta;
    point.feasible = true;
    return point;
}

}  // namespace

TradeoffPoint achievable_ebno_asymptotic(const ScenarioSpec& spec, double s) {
    spec.validate();
    if (!spec.dist) throw ValidationError("achievable: a concrete protocol distribution is required");
    if (!(s > 0.0)) throw ValidationError("achievable: spectrum efficiency > 0");
    return minimize_ebno(spec, s, [&](double db, FeasiblePick* pick) {
        return threshold_feasible(spec, s, db, pick);
    });
}

TradeoffPoint boundary_ebno(const ScenarioSpec& spec, double s) {
    spec.validate();
    if (!(s > 0.0)) throw ValidationError("boundary: spectrum efficiency > 0");
    return minimize_ebno(spec, s, [&](double db, FeasiblePick* pick) {
        return boundary_feasible(spec, s, db, pick);
    });
}

std::vector<TradeoffPoint> sweep_spectrum(const ScenarioSpec& spec,
                                          const std::vector<double>& s_grid) {
    spec.validate();
    std::vector<TradeoffPoint> points;
    points.reserve(s_grid.size());
    for (double s : s_grid) {
        try {
            points.push_back(spec.dist ? achievable_ebno_asymptotic(spec, s)
                                       : boundary_ebno(spec, s));
        } catch (const InfeasibleError&) {
            TradeoffPoint p;
            p.x = s;
            p.feasible = false;
            points.push_back(p);
        }
    }
    return points;
}

std::vector<TradeoffPoint> sweep_ka(const ScenarioSpec& spec, const std::vector<int>& ka_grid,
                                    long frame_n) {
    spec.validate();
    if (frame_n < 100) throw ValidationError("sweep_ka: frame_n too small");
    ScenarioSpec local = spec;
    if (local.n_grid.empty()) local.n_grid = divisor_n_grid(frame_n);
    std::vector<TradeoffPoint> points;
    points.reserve(ka_grid.size());
    for (int ka : ka_grid) {
        if (ka < 1) throw ValidationError("sweep_ka: K_a >= 1");
        // G = K_a n / N <=> S = K_a log2M / N at each candidate n.
        const double s = static_cast<double>(ka) * spec.log2_m / static_cast<double>(frame_n);
        try {
            TradeoffPoint p = local.dist ? achievable_ebno_asymptotic(local, s)
                                         : boundary_ebno(local, s);
            p.x = static_cast<double>(ka);
            points.push_back(p);
        } catch (const InfeasibleError&) {
            TradeoffPoint p;
            p.x = static_cast<double>(ka);
            p.feasible = false;
            points.push_back(p);
        }
    }
    return points;
}

}  // namespace irsa
