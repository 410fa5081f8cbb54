#include "irsa/threshold.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "irsa/errors.hpp"
#include "irsa/root_finding.hpp"

namespace irsa {

namespace {
constexpr double kRootTol = 1e-10;
constexpr double kConvergenceSlack = 1e-10;

// sum_{k=0..count-1} x^k / k!
double poisson_partial_sum(double x, int count) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 0; k < count; ++k) {
        sum += term;
        term *= x / static_cast<double>(k + 1);
    }
    return sum;
}

// F1(G) = sum_{t=1..T} (1 - P_E|t) [1 - e^{-G/eta} sum_{k<t} (G/eta)^k / k!]
double boundary_lhs_sum(double g, double eta, const ErrorProfile& errors) {
    const double x = g / eta;
    const double ex = std::exp(-x);
    double term = 1.0;   // x^k / k!
    double tail = 0.0;   // running sum_{k<t} x^k/k!
    double total = 0.0;
    for (int t = 1; t <= errors.t_mpr(); ++t) {
        tail += term;
        term *= x / static_cast<double>(t);
        total += (1.0 - errors.at(t)) * (1.0 - ex * tail);
    }
    return total;
}
}  // namespace

void ThresholdQuery::validate() const {
    if (!(g_lo > 0.0) || !(g_hi > g_lo)) throw ValidationError("threshold: need 0 < g_lo < g_hi");
    if (!(e >= 0.0)) throw ValidationError("threshold: e >= 0 required");
    if (!(g_tolerance > 0.0)) throw ValidationError("threshold: g_tolerance > 0");
}

bool de_converges(const ThresholdQuery& q, double g) {
    DeParams params{q.dist, q.errors, g, q.sic_efficiency, q.max_iters, q.fp_tolerance};
    auto [p_inf, reason] = de_fixed_point(params);
    (void)reason;  // MaxIters with p above target counts as a failure verdict
    const double target = q.errors.at(1) * (1.0 + q.e);
    return p_inf <= target + kConvergenceSlack;
}

double threshold_gmac(const ThresholdQuery& q) {
    q.validate();
    if (!de_converges(q, q.g_lo)) {
        throw BracketError("threshold: recursion already fails at g_lo = " + std::to_string(q.g_lo));
    }
    if (de_converges(q, q.g_hi)) {
        throw BracketError("threshold: recursion still converges at g_hi = " + std::to_string(q.g_hi));
    }
    double lo = q.g_lo, hi = q.g_hi;
    while (hi - lo > q.g_tolerance) {
        double mid = 0.5 * (lo + hi);
        (de_converges(q, mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<double> g0_onset(const IrsaDistribution& dist, const ErrorProfile& errors,
                               double g_hi, double e_probe, double resolution) {
    if (!(g_hi > 0.0)) throw ValidationError("g0_onset: g_hi > 0 required");
    const double p_floor = errors.at(1) * (1.0 + e_probe);
    auto has_upper_crossing = [&](double g) {
        DeParams params{dist, errors, g, 1.0, 1, 1.0};  // iteration fields unused here
        for (double root : exit_crossings(params)) {
            if (root > p_floor) return true;
        }
        return false;
    };
    // Coarse upward scan for the first load with an upper crossing, then
    // bisection inside the last scan gap.
    constexpr int kScanSteps = 40;
    double lo = 0.0;
    double hi = -1.0;
    for (int k = 1; k <= kScanSteps; ++k) {
        double g = g_hi * static_cast<double>(k) / kScanSteps;
        if (has_upper_crossing(g)) {
            hi = g;
            break;
        }
        lo = g;
    }
    if (hi < 0.0) return std::nullopt;
    if (lo == 0.0) return hi;  // already present at the smallest scanned load
    while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        (has_upper_crossing(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double boundary_collision(double eta, int t_mpr) {
    BoundaryQuery q;
    q.eta = eta;
    q.lambda1 = 0.0;
    q.t_mpr = t_mpr;
    q.errors = ErrorProfile::zeros(t_mpr);
    q.e = 0.0;
    return boundary_gmac(q).g1;
}

void BoundaryQuery::validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("boundary: eta must be in (0,1]");
    if (!(lambda1 >= 0.0 && lambda1 < 1.0)) throw ValidationError("boundary: Lambda_1 in [0,1)");
    if (t_mpr != errors.t_mpr()) throw ValidationError("boundary: T inconsistent with profile");
    if (!(e >= 0.0)) throw ValidationError("boundary: e >= 0 required");
    const double p1e = errors.at(1) * (1.0 + e);
    if (p1e >= 0.5) {
        throw DomainError("boundary: area bound requires P_E|1 (1+e) < 0.5");
    }
}

BoundaryResult boundary_gmac(const BoundaryQuery& q) {
    q.validate();
    const double p1 = q.errors.at(1);
    const double p1e = p1 * (1.0 + q.e);
    const double slope = 1.0 - q.lambda1 * p1e - (1.0 - q.lambda1) * p1e * p1e;
    const double eta_cap = (1.0 - p1) / slope;
    if (q.eta > eta_cap) {
        throw DomainError("boundary: eta exceeds the admissible cap (1-P_E|1)/[1-...] = " +
                          std::to_string(eta_cap));
    }

    BoundaryResult result;

    // G1: root of G*slope = F1(G); F1 is concave increasing from 0, so the
    // residual is positive just right of 0 and negative once F1 saturates.
    auto residual1 = [&](double g) { return boundary_lhs_sum(g, q.eta, q.errors) - slope * g; };
    const double hi1 = 1.5 * q.t_mpr + 10.0;
    if (!(residual1(1e-9) > 0.0) || !(residual1(hi1) < 0.0)) {
        throw BracketError("boundary: G1 sign pattern violated on [1e-9, " + std::to_string(hi1) + "]");
    }
    result.g1 = bisect(residual1, 1e-9, hi1, kRootTol);

    // G2: root of f_s(Lambda_1) = P_E|1 (1+e); only qualifies when Lambda_1 > 0.
    if (q.lambda1 > 0.0) {
        auto fs_at_lambda1 = [&](double g) {
            const double x = g * q.lambda1 / q.eta;
            const double ex = std::exp(-x);
            double term = 1.0;
            double sum = 0.0;
            for (int t = 1; t <= q.errors.t_mpr(); ++t) {
                sum += (1.0 - q.errors.at(t)) * term;
                term *= x / static_cast<double>(t);
            }
            return 1.0 - ex * sum;
        };
        auto residual2 = [&](double g) { return fs_at_lambda1(g) - p1e; };
        if (residual2(0.0) >= 0.0) {
            result.g2 = 0.0;  // f_s(Lambda_1) already at the target when G -> 0
        } else {
            const double hi2 = 50.0 * q.eta / q.lambda1;
            result.g2 = bisect(residual2, 0.0, hi2, kRootTol);
        }
    } else {
        result.g2 = std::numeric_limits<double>::infinity();
    }

    if (result.g2 < result.g1) {
        result.g_cb = result.g2;
        result.binding = BindingBound::G2;
    } else {
        result.g_cb = result.g1;
        result.binding = BindingBound::G1;
    }
    return result;
}

double fs_integral(const IrsaDistribution& dist, const ErrorProfile& errors, double g) {
    if (!(g > 0.0)) throw ValidationError("fs_integral: g > 0 required");
    const double eta = dist.efficiency();
    const double x = g / eta;  // = g * dbar
    const double ex = std::exp(-x);
    double total = 1.0;
    for (int t = 1; t <= errors.t_mpr(); ++t) {
        double inner = (eta / g) * (1.0 - ex * poisson_partial_sum(x, t));
        total -= (1.0 - errors.at(t)) * inner;
    }
    return total;
}

bool open_tunnel_check(const IrsaDistribution& dist, const ErrorProfile& errors, double g,
                       double e) {
    const double p1e = errors.at(1) * (1.0 + e);
    if (p1e >= 0.5) throw DomainError("open_tunnel: requires P_E|1 (1+e) < 0.5");
    const double eta = dist.efficiency();
    const double lambda1 = dist.lambda1();
    const double overlap = eta * (lambda1 * p1e + (1.0 - lambda1) * p1e * p1e);
    return fs_integral(dist, errors, g) + eta - overlap <= 1.0;
}

double floor_bound(const IrsaDistribution& dist, double p_e1, double e) {
    if (!(p_e1 >= 0.0 && p_e1 <= 1.0)) throw ValidationError("floor_bound: P_E|1 in [0,1]");
    if (!(e >= 0.0)) throw ValidationError("floor_bound: e >= 0");
    double arg = p_e1 * (1.0 + e);
    if (arg > 1.0) arg = 1.0;
    return dist.pgf(arg);
}

}  // namespace irsa
