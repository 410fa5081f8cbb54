#include "irsa/distribution.hpp"

#include <cmath>
#include <sstream>

#include "irsa/errors.hpp"

namespace irsa {

namespace {
constexpr double kSumTol = 1e-12;
constexpr int kMaxPoissonTerms = 64;
}  // namespace

IrsaDistribution::IrsaDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("distribution: needs at least degree 1");
    double sum = 0.0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i])) {
            throw ValidationError("distribution: Lambda_" + std::to_string(i + 1) +
                                  " must be a finite nonnegative probability");
        }
        sum += probs_[i];
    }
    if (std::fabs(sum - 1.0) > kSumTol) {
        throw ValidationError("distribution: probabilities sum to " + std::to_string(sum) +
                              ", expected 1 within 1e-12");
    }
    dmin_ = 0;
    mean_degree_ = 0.0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        if (dmin_ == 0 && probs_[i] > 0.0) dmin_ = static_cast<int>(i) + 1;
        mean_degree_ += static_cast<double>(i + 1) * probs_[i];
    }
    if (dmin_ == 0) throw ValidationError("distribution: all-zero probability vector");
}

IrsaDistribution IrsaDistribution::from_pairs(const std::vector<std::pair<int, double>>& pairs) {
    int dmax = 0;
    for (const auto& [d, p] : pairs) {
        if (d < 1) throw ValidationError("distribution: degrees start at 1");
        if (d > dmax) dmax = d;
        (void)p;
    }
    if (dmax == 0) throw ValidationError("distribution: no (degree,probability) pairs given");
    std::vector<double> probs(static_cast<size_t>(dmax), 0.0);
    for (const auto& [d, p] : pairs) {
        if (probs[static_cast<size_t>(d) - 1] != 0.0) {
            throw ValidationError("distribution: duplicate degree " + std::to_string(d));
        }
        probs[static_cast<size_t>(d) - 1] = p;
    }
    return IrsaDistribution(std::move(probs));
}

IrsaDistribution IrsaDistribution::parse(const std::string& text) {
    std::vector<std::pair<int, double>> pairs;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        auto colon = token.find(':');
        if (colon == std::string::npos) {
            throw ConfigParseError("distribution: expected degree:prob, got '" + token + "'");
        }
        try {
            size_t used = 0;
            int d = std::stoi(token.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("trailing");
            double p = std::stod(token.substr(colon + 1), &used);
            if (used != token.size() - colon - 1) throw std::invalid_argument("trailing");
            pairs.emplace_back(d, p);
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigParseError("distribution: cannot parse pair '" + token + "'");
        }
    }
    if (pairs.empty()) throw ConfigParseError("distribution: empty specification");
    return from_pairs(pairs);
}

double IrsaDistribution::prob(int degree) const {
    if (degree < 1 || degree > dmax()) return 0.0;
    return probs_[static_cast<size_t>(degree) - 1];
}

double IrsaDistribution::pgf(double x) const {
    // Horner evaluation of sum_d Lambda_d x^d.
    double acc = 0.0;
    for (size_t i = probs_.size(); i-- > 0;) acc = acc * x + probs_[i];
    return acc * x;
}

double IrsaDistribution::pgf_derivative(double x) const {
    double acc = 0.0;
    for (size_t i = probs_.size(); i-- > 0;) {
        acc = acc * x + static_cast<double>(i + 1) * probs_[i];
    }
    return acc;
}

LoadPoint LoadPoint::from_g(double g) {
    LoadPoint lp;
    lp.g = g;
    lp.validate();
    return lp;
}

LoadPoint LoadPoint::from_counts(double k_a_mean, double n_slots) {
    LoadPoint lp;
    lp.k_a_mean = k_a_mean;
    lp.n_slots = n_slots;
    lp.g = k_a_mean / n_slots;
    lp.validate();
    return lp;
}

void LoadPoint::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("load: g must be positive");
    if (k_a_mean >= 0.0 && n_slots > 0.0) {
        if (std::fabs(g - k_a_mean / n_slots) > 1e-9) {
            throw ValidationError("load: g inconsistent with k_a_mean / n_slots");
        }
    }
}

SaConfig::SaConfig(int t, std::vector<double> p_m) : t_mpr(t), message_error(std::move(p_m)) {
    if (t_mpr < 1) throw ValidationError("sa: T >= 1 required");
    if (t_mpr > kMaxPoissonTerms) {
        throw ValidationError("sa: T > 64 not supported by the series evaluation");
    }
    if (static_cast<int>(message_error.size()) != t_mpr) {
        throw ValidationError("sa: need exactly T message-error entries");
    }
    double prev = 0.0;
    for (int i = 0; i < t_mpr; ++i) {
        double p = message_error[static_cast<size_t>(i)];
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sa: P_M|t outside [0,1]");
        if (p < prev) throw ValidationError("sa: P_M|t must be nondecreasing in t");
        prev = p;
    }
}

double sa_plr_asymptotic(const SaConfig& cfg, const LoadPoint& load) {
    load.validate();
    const double beta = load.g;
    // P_L = 1 - sum_{t=1..T} e^{-beta} beta^{t-1}/(t-1)! (1 - P_M|t)
    double term = std::exp(-beta);  // t = 1
    double survive = 0.0;
    for (int t = 1; t <= cfg.t_mpr; ++t) {
        survive += term * (1.0 - cfg.message_error[static_cast<size_t>(t) - 1]);
        term *= beta / static_cast<double>(t);
    }
    double plr = 1.0 - survive;
    return plr < 0.0 ? 0.0 : (plr > 1.0 ? 1.0 : plr);
}

double sa_plr_finite(const SaConfig& cfg, long k_a, long n_slots) {
    if (k_a < 1 || n_slots < 1) throw ValidationError("sa: k_a >= 1 and n_slots >= 1");
    const long others = k_a - 1;
    if (n_slots == 1) {
        // everyone shares the single slot: exactly k_a - 1 colliders
        if (k_a <= cfg.t_mpr) return cfg.message_error[static_cast<size_t>(k_a) - 1];
        return 1.0;
    }
    // P_c(t) = Bin(k_a - 1, 1/n_slots) at t, for t = 0 .. min(T, k_a) - 1
    const double p = 1.0 / static_cast<double>(n_slots);
    double pc = std::pow(1.0 - p, static_cast<double>(others));  // t = 0
    double survive = 0.0;
    for (int t = 1; t <= cfg.t_mpr; ++t) {
        if (t - 1 > others) break;  // P_c(t-1) = 0 beyond k_a - 1 colliders
        survive += pc * (1.0 - cfg.message_error[static_cast<size_t>(t) - 1]);
        // advance binomial pmf from t-1 to t colliders
        pc *= static_cast<double>(others - (t - 1)) / static_cast<double>(t) * p / (1.0 - p);
    }
    double plr = 1.0 - survive;
    return plr < 0.0 ? 0.0 : (plr > 1.0 ? 1.0 : plr);
}

}  // namespace irsa
