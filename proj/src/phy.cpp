#include "irsa/phy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irsa/errors.hpp"
#include "irsa/special_functions.hpp"

namespace irsa {

namespace {

constexpr double kLog2E = 1.4426950408889634;  // log2(e)
constexpr double kLn2 = 0.6931471805599453;

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Information density of the modulo-2 channel at noise realization x:
// i(x) = log2( 2 f(x) / (f(x) + f1(x)) ) with f1(x) = f(x-1).
double mod2_information_density(double x, double sigma) {
    double f = wrapped_gaussian_pdf(x, sigma);
    double f1 = wrapped_gaussian_pdf(x - 1.0, sigma);
    if (f <= 0.0) return 0.0;  // no mass, caller weights by f anyway
    double r = f1 / f;
    if (std::isfinite(r)) return 1.0 - std::log1p(r) / kLn2;
    return 1.0 - (std::log(f1) - std::log(f)) / kLn2;
}

struct Mod2Integrals {
    double mass = 0.0;  // int f
    double mean = 0.0;  // int i f
    double msq = 0.0;   // int i^2 f
};

Mod2Integrals mod2_panel(double a, double b, double sigma) {
    // Simpson rule on one panel, all three integrands share evaluations.
    double m = 0.5 * (a + b);
    double fa = wrapped_gaussian_pdf(a, sigma), fm = wrapped_gaussian_pdf(m, sigma),
           fb_ = wrapped_gaussian_pdf(b, sigma);
    double ia = mod2_information_density(a, sigma), im = mod2_information_density(m, sigma),
           ib = mod2_information_density(b, sigma);
    double w = (b - a) / 6.0;
    Mod2Integrals out;
    out.mass = w * (fa + 4.0 * fm + fb_);
    out.mean = w * (fa * ia + 4.0 * fm * im + fb_ * ib);
    out.msq = w * (fa * ia * ia + 4.0 * fm * im * im + fb_ * ib * ib);
    return out;
}

void mod2_adaptive(double a, double b, double sigma, const Mod2Integrals& whole, double tol,
                   int depth, Mod2Integrals& acc) {
    if (depth > 60) throw IntegrationError("mod2_stats: adaptive quadrature depth exhausted");
    double m = 0.5 * (a + b);
    Mod2Integrals left = mod2_panel(a, m, sigma);
    Mod2Integrals right = mod2_panel(m, b, sigma);
    double err = std::fabs(left.mean + right.mean - whole.mean) +
                 std::fabs(left.msq + right.msq - whole.msq) +
                 std::fabs(left.mass + right.mass - whole.mass);
    if (err < tol || (b - a) < 1e-14) {
        acc.mass += left.mass + right.mass;
        acc.mean += left.mean + right.mean;
        acc.msq += left.msq + right.msq;
        return;
    }
    mod2_adaptive(a, m, sigma, left, 0.5 * tol, depth + 1, acc);
    mod2_adaptive(m, b, sigma, right, 0.5 * tol, depth + 1, acc);
}

}  // namespace

ChannelStats awgn_stats(double snr) {
    if (!(snr > 0.0) || !std::isfinite(snr)) throw ValidationError("awgn_stats: snr > 0 required");
    ChannelStats stats;
    stats.capacity = 0.5 * std::log2(1.0 + snr);
    stats.dispersion = 0.5 * kLog2E * snr * (snr + 2.0) / ((snr + 1.0) * (snr + 1.0));
    return stats;
}

double wrapped_gaussian_pdf(double x, double sigma) {
    // Fold onto one period and sum images until a term is negligible;
    // at least ceil(3*sigma) images on each side.
    double xr = std::fmod(x, 2.0);
    if (xr < 0.0) xr += 2.0;
    const double norm = 1.0 / (std::sqrt(2.0 * M_PI) * sigma);
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    const int min_images = static_cast<int>(std::ceil(3.0 * sigma)) + 1;
    double sum = std::exp(-xr * xr * inv2s2);
    for (int i = 1;; ++i) {
        double lo = xr - 2.0 * i;
        double hi = xr + 2.0 * i;
        double term = std::exp(-lo * lo * inv2s2) + std::exp(-hi * hi * inv2s2);
        sum += term;
        if (i >= min_images && term < sum * 1e-16) break;
        if (i > 10000) break;
    }
    return norm * sum;
}

ChannelStats mod2_stats(double snr) {
    if (!(snr > 0.0) || !std::isfinite(snr)) throw ValidationError("mod2_stats: snr > 0 required");
    const double sigma = std::sqrt(1.0 / (4.0 * snr));  // sigma'^2 = sigma^2 / 4P

    // The integrand over [0,2) is symmetric about x = 1; integrate [0,1]
    // and double. Seed panels resolve the density peak at x = 0.
    std::vector<double> knots{0.0};
    for (double s = sigma / 8.0; s < 0.5; s *= 2.0) knots.push_back(s);
    knots.push_back(0.5);
    knots.push_back(1.0);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    Mod2Integrals acc;
    const double tol = 1e-12;
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        Mod2Integrals whole = mod2_panel(knots[i], knots[i + 1], sigma);
        mod2_adaptive(knots[i], knots[i + 1], sigma, whole, tol, 0, acc);
    }
    const double mass = 2.0 * acc.mass;
    if (std::fabs(mass - 1.0) > 1e-9) {
        throw IntegrationError("mod2_stats: wrapped density mass " + std::to_string(mass) +
                               " deviates from 1 beyond tolerance");
    }
    ChannelStats stats;
    stats.capacity = 2.0 * acc.mean;
    stats.dispersion = std::max(0.0, 2.0 * acc.msq - stats.capacity * stats.capacity);
    return stats;
}

double normal_approx_pe(const ChannelStats& stats, int n_eff, double log2_m_prime) {
    if (n_eff < 2) throw ValidationError("normal_approx_pe: n_eff >= 2 required");
    if (!(stats.capacity >= 0.0 && stats.dispersion >= 0.0)) {
        throw ValidationError("normal_approx_pe: invalid channel stats");
    }
    const double n = static_cast<double>(n_eff);
    const double margin = stats.capacity - log2_m_prime / n + std::log2(n) / (2.0 * n);
    if (stats.dispersion == 0.0) return margin > 0.0 ? 0.0 : 1.0;
    return clamp01(q_function(std::sqrt(n / stats.dispersion) * margin));
}

void PhyConfig::validate() const {
    if (n_pilots < 0 || n <= n_pilots) throw ValidationError("phy: need n > n_pilots >= 0");
    if (!(log2_m >= 1.0)) throw ValidationError("phy: log2M >= 1 required");
    if (redundancy_r < 0) throw ValidationError("phy: redundancy r >= 0");
    if (!(snr > 0.0)) throw ValidationError("phy: snr > 0 required");
    if (t_mpr < 1 || t_mpr > 64) throw ValidationError("phy: T in [1,64]");
}

F1Model default_f1_surrogate() {
    return [](int n, double log2_m_prime, double snr, int t) {
        if (t < 1) throw ValidationError("f1 surrogate: t >= 1 required");
        ChannelStats stats = awgn_stats(static_cast<double>(t) * snr);
        if (t == 1) return normal_approx_pe(stats, n, log2_m_prime);
        const double nn = static_cast<double>(n);
        const double margin = stats.capacity - static_cast<double>(t) * log2_m_prime / nn;
        if (stats.dispersion == 0.0) return margin > 0.0 ? 0.0 : 1.0;
        return clamp01(q_function(std::sqrt(nn / stats.dispersion) * margin));
    };
}

ErrorProfile option1_profile(const PhyConfig& cfg, const F1Model& surrogate) {
    cfg.validate();
    if (!surrogate) throw ValidationError("option1_profile: surrogate unavailable");
    const int n_eff = cfg.n - cfg.n_pilots;
    const double log2_mp = cfg.log2_m_prime_option1();
    std::vector<double> probs;
    probs.reserve(static_cast<size_t>(cfg.t_mpr));
    double running = 0.0;
    for (int t = 1; t <= cfg.t_mpr; ++t) {
        double f1 = surrogate(n_eff, log2_mp, cfg.snr, t);
        if (!(f1 >= 0.0 && f1 <= 1.0) || !std::isfinite(f1)) {
            throw ValidationError("option1_profile: surrogate returned a non-probability for t=" +
                                  std::to_string(t));
        }
        double pe = std::min(1.0, static_cast<double>(t) * f1);
        running = std::max(running, pe);
        probs.push_back(running);
    }
    return ErrorProfile(std::move(probs));
}

ErrorProfile option2_profile(const PhyConfig& cfg, double rate_multiplier) {
    cfg.validate();
    if (!(rate_multiplier > 0.0)) throw ValidationError("option2_profile: rate multiplier > 0");
    const int n_eff = cfg.n - cfg.n_pilots;
    const double log2_mp = rate_multiplier * cfg.log2_m * cfg.t_mpr + cfg.redundancy_r;
    ChannelStats stats = cfg.t_mpr == 1 ? awgn_stats(cfg.snr) : mod2_stats(cfg.snr);
    double pe = normal_approx_pe(stats, n_eff, log2_mp);
    return ErrorProfile(std::vector<double>(static_cast<size_t>(cfg.t_mpr), pe));
}

double energy_estimator_failure(int t, double snr, int n) {
    if (t < 0) throw ValidationError("energy estimator: t >= 0 required");
    if (n < 1) throw ValidationError("energy estimator: n >= 1 required");
    if (!(snr > 0.0)) throw ValidationError("energy estimator: snr > 0 required");
    // A ~ (sigma^2 + t P) chi^2(n); failure when A leaves the band
    // n (sigma^2 + t P) -+ n P / 2. Normalized by (sigma^2 + t P):
    const double scale = 1.0 + static_cast<double>(t) * snr;
    const double nn = static_cast<double>(n);
    const double hi = nn * (scale + 0.5 * snr) / scale;
    const double lo = nn * (scale - 0.5 * snr) / scale;
    double upper = 1.0 - chi_square_cdf(hi, n);
    double lower = lo > 0.0 ? chi_square_cdf(lo, n) : 0.0;
    return clamp01(upper + lower);
}

double pilot_estimator_failure(int n_pilots, double snr) {
    if (n_pilots < 1) throw ValidationError("pilot estimator: n_pilots >= 1 required");
    if (!(snr > 0.0)) throw ValidationError("pilot estimator: snr > 0 required");
    return std::erfc(std::sqrt(static_cast<double>(n_pilots) * snr / 8.0));
}

EstimatorModel EstimatorModel::perfect(int t_mpr) {
    if (t_mpr < 1) throw ValidationError("estimator: T >= 1 required");
    EstimatorModel m;
    m.kind = Kind::Perfect;
    m.failure_probs.assign(static_cast<size_t>(t_mpr), 0.0);
    return m;
}

EstimatorModel EstimatorModel::energy_based(int t_mpr, double snr, int n) {
    if (t_mpr < 1) throw ValidationError("estimator: T >= 1 required");
    EstimatorModel m;
    m.kind = Kind::EnergyBased;
    m.failure_probs.reserve(static_cast<size_t>(t_mpr));
    for (int t = 1; t <= t_mpr; ++t) m.failure_probs.push_back(energy_estimator_failure(t, snr, n));
    return m;
}

EstimatorModel EstimatorModel::pilot_based(int t_mpr, int n_pilots, double snr) {
    if (t_mpr < 1) throw ValidationError("estimator: T >= 1 required");
    EstimatorModel m;
    m.kind = Kind::PilotBased;
    m.failure_probs.assign(static_cast<size_t>(t_mpr), pilot_estimator_failure(n_pilots, snr));
    return m;
}

ErrorProfile effective_profile(const ErrorProfile& base, const EstimatorModel& est,
                               const PhyConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(est.failure_probs.size()) != base.t_mpr() || base.t_mpr() != cfg.t_mpr) {
        throw ValidationError("effective_profile: T mismatch between base, estimator and config");
    }
    std::vector<double> probs;
    probs.reserve(est.failure_probs.size());
    for (int t = 1; t <= base.t_mpr(); ++t) {
        double b = base.at(t);
        double f = est.failure_probs[static_cast<size_t>(t) - 1];
        probs.push_back(clamp01(b + f * (1.0 - b)));
    }
    return ErrorProfile(std::move(probs));
}

double snr_from_ebno(double ebno_db, double eta, double log2_m, int n) {
    if (!(eta > 0.0) || !(log2_m > 0.0) || n < 1) {
        throw ValidationError("snr_from_ebno: positive eta, log2M and n required");
    }
    return 2.0 * eta * log2_m / static_cast<double>(n) * std::pow(10.0, ebno_db / 10.0);
}

double ebno_from_snr(double snr, double eta, double log2_m, int n) {
    if (!(snr > 0.0) || !(eta > 0.0) || !(log2_m > 0.0) || n < 1) {
        throw ValidationError("ebno_from_snr: positive arguments required");
    }
    return 10.0 * std::log10(snr * static_cast<double>(n) / (2.0 * eta * log2_m));
}

}  // namespace irsa
