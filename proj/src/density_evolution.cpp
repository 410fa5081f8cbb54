#include "irsa/density_evolution.hpp"

#include <cmath>

#include "irsa/errors.hpp"
#include "irsa/root_finding.hpp"

namespace irsa {

void DeParams::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("de: load g must be positive");
    if (!(sic_efficiency > 0.0 && sic_efficiency <= 1.0)) {
        throw ValidationError("de: sic efficiency gamma must be in (0,1]");
    }
    if (max_iters < 1) throw ValidationError("de: max_iters >= 1");
    if (!(fp_tolerance > 0.0)) throw ValidationError("de: fp_tolerance > 0");
}

double fs_collision(double q, double g, double mean_deg, int t_mpr) {
    const double x = g * mean_deg * q;
    // 1 - e^{-x} sum_{t=0..T-1} x^t / t!, running-term evaluation
    double term = 1.0;
    double sum = 1.0;
    for (int t = 1; t < t_mpr; ++t) {
        term *= x / static_cast<double>(t);
        sum += term;
    }
    double p = 1.0 - std::exp(-x) * sum;
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double fs_gmac(double q, const DeParams& params) {
    const double x = params.g * params.dist.mean_degree() * q;
    const double gamma = params.sic_efficiency;
    const double expo = params.g * params.dist.mean_degree() * (1.0 - gamma + gamma * q);
    const int t_mpr = params.errors.t_mpr();
    double term = 1.0;  // x^{t-1}/(t-1)! at t = 1
    double sum = 0.0;
    for (int t = 1; t <= t_mpr; ++t) {
        sum += (1.0 - params.errors.at(t)) * term;
        term *= x / static_cast<double>(t);
    }
    double p = 1.0 - std::exp(-expo) * sum;
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double fb(double p, const IrsaDistribution& dist) {
    double q = dist.pgf_derivative(p) / dist.mean_degree();
    return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

double fs_derivative(double q, const DeParams& params) {
    if (params.sic_efficiency != 1.0) {
        throw ValidationError("fs_derivative: analytical form covers perfect SIC only");
    }
    const double gd = params.g * params.dist.mean_degree();
    const double x = gd * q;
    const int t_mpr = params.errors.t_mpr();
    double term = 1.0;
    double sum = 0.0;
    for (int t = 1; t <= t_mpr; ++t) {
        sum += (params.errors.at(t + 1) - params.errors.at(t)) * term;
        term *= x / static_cast<double>(t);
    }
    return gd * std::exp(-x) * sum;
}

std::pair<double, DeStopReason> de_fixed_point(const DeParams& params) {
    params.validate();
    double p = fs_gmac(1.0, params);
    for (int l = 0; l < params.max_iters; ++l) {
        double q = fb(p, params.dist);
        double next = fs_gmac(q, params);
        if (std::fabs(next - p) < params.fp_tolerance) {
            return {next, DeStopReason::FixedPoint};
        }
        p = next;
    }
    return {p, DeStopReason::MaxIters};
}

DeState run_de(const DeParams& params) {
    params.validate();
    DeState state;
    double p = fs_gmac(1.0, params);
    state.trajectory.emplace_back(p, 1.0);
    state.converged_reason = DeStopReason::MaxIters;
    for (int l = 0; l < params.max_iters; ++l) {
        double q = fb(p, params.dist);
        double next = fs_gmac(q, params);
        state.trajectory.emplace_back(next, q);
        if (std::fabs(next - p) < params.fp_tolerance) {
            p = next;
            state.converged_reason = DeStopReason::FixedPoint;
            break;
        }
        p = next;
    }
    state.p_infinity = p;
    return state;
}

double asymptotic_plr(double p_inf, const IrsaDistribution& dist) {
    if (!(p_inf >= 0.0 && p_inf <= 1.0)) {
        throw ValidationError("asymptotic_plr: p_inf must lie in [0,1]");
    }
    return dist.pgf(p_inf);
}

ExitChartData exit_chart(const DeParams& params, int samples) {
    params.validate();
    if (samples < 2) throw ValidationError("exit_chart: samples >= 2");
    ExitChartData chart;
    chart.p.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        double x = static_cast<double>(i) / static_cast<double>(samples - 1);
        chart.p.push_back(x);
        chart.fb_of_p.push_back(fb(x, params.dist));
        chart.q.push_back(x);
        chart.fs_of_q.push_back(fs_gmac(x, params));
    }
    return chart;
}

std::vector<double> exit_crossings(const DeParams& params) {
    params.validate();
    auto residual = [&params](double p) { return fs_gmac(fb(p, params.dist), params) - p; };
    constexpr int kScan = 1000;
    constexpr double kTol = 1e-10;
    std::vector<double> roots;
    double prev_p = 0.0;
    double prev_r = residual(prev_p);
    for (int i = 1; i <= kScan; ++i) {
        double p = static_cast<double>(i) / kScan;
        double r = residual(p);
        if (r == 0.0) {
            roots.push_back(p);
        } else if ((prev_r < 0.0) != (r < 0.0) && prev_r != 0.0) {
            roots.push_back(bisect(residual, prev_p, p, kTol));
        }
        prev_p = p;
        prev_r = r;
    }
    return roots;
}

StabilityReport stability_check(const IrsaDistribution& dist, const ErrorProfile& errors,
                                double g_max) {
    if (!(g_max > 0.0)) throw ValidationError("stability_check: g_max > 0 required");
    StabilityReport report;
    if (dist.dmin() >= 3) {
        report.verdict = StabilityVerdict::ConditionA;
        return report;
    }
    if (dist.dmin() == 2 && errors.t_mpr() >= 2) {
        double lambda2 = dist.prob(2);
        report.gap = errors.at(2) - errors.at(1);
        report.bound = 0.1 / (2.0 * lambda2 * g_max);
        if (report.gap <= report.bound) {
            report.verdict = StabilityVerdict::ConditionB;
            return report;
        }
    }
    report.verdict = StabilityVerdict::Neither;
    return report;
}

}  // namespace irsa
