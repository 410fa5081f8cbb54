#pragma once

#include <string>
#include <utility>
#include <vector>

namespace irsa {

// Repetition-degree distribution of an IRSA protocol, stored dense from
// degree 1 to dmax. Immutable after construction; construction validates
// that all entries are nonnegative and sum to 1 within 1e-12 (out-of-spec
// inputs are rejected, never silently renormalized).
class IrsaDistribution {
public:
    explicit IrsaDistribution(std::vector<double> probs);

    // Builds from (degree, probability) pairs; unspecified degrees are zero.
    static IrsaDistribution from_pairs(const std::vector<std::pair<int, double>>& pairs);

    // Parses the config text form "d1:p1 d2:p2 ...".
    static IrsaDistribution parse(const std::string& text);

    const std::vector<double>& probs() const { return probs_; }
    int dmax() const { return static_cast<int>(probs_.size()); }
    int dmin() const { return dmin_; }
    double prob(int degree) const;  // Lambda_d, zero outside [1, dmax]
    double lambda1() const { return prob(1); }

    double mean_degree() const { return mean_degree_; }   // dbar = Lambda'(1)
    double efficiency() const { return 1.0 / mean_degree_; }  // eta

    double pgf(double x) const;             // Lambda(x)
    double pgf_derivative(double x) const;  // Lambda'(x)

private:
    std::vector<double> probs_;
    int dmin_ = 1;
    double mean_degree_ = 1.0;
};

// Average-load bookkeeping: g packets/slot, optionally tied to an
// expected active-user count and a slot count.
struct LoadPoint {
    double g = 0.0;
    double k_a_mean = -1.0;  // negative means unset
    double n_slots = -1.0;

    static LoadPoint from_g(double g);
    static LoadPoint from_counts(double k_a_mean, double n_slots);
    void validate() const;
};

// Slotted-ALOHA baseline configuration: MPR capability T and the
// conditional message-error probabilities P_M|t for t = 1..T.
struct SaConfig {
    int t_mpr = 1;
    std::vector<double> message_error;  // P_M|t, t = 1..T

    SaConfig(int t, std::vector<double> p_m);
};

// Poisson-asymptotic SA packet loss probability at average load beta.
double sa_plr_asymptotic(const SaConfig& cfg, const LoadPoint& load);

// Exact finite-frame SA packet loss probability (binomial collisions).
double sa_plr_finite(const SaConfig& cfg, long k_a, long n_slots);

}  // namespace irsa
