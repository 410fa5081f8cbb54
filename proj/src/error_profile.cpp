#include "irsa/error_profile.hpp"

#include <cmath>
#include <string>

#include "irsa/errors.hpp"

namespace irsa {

ErrorProfile::ErrorProfile(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("error profile: needs at least t = 1");
    if (probs_.size() > 64) {
        throw ValidationError("error profile: T > 64 not supported by the series evaluation");
    }
    double prev = 0.0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        double p = probs_[i];
        if (!(p >= 0.0 && p <= 1.0) || !std::isfinite(p)) {
            throw ValidationError("error profile: P_E|" + std::to_string(i + 1) +
                                  " outside [0,1]");
        }
        if (p < prev) {
            throw ValidationError("error profile: P_E|t must be nondecreasing in t (violated at t=" +
                                  std::to_string(i + 1) + ")");
        }
        prev = p;
    }
}

ErrorProfile ErrorProfile::uniform(int t_mpr, double p_e) {
    if (t_mpr < 1) throw ValidationError("error profile: T >= 1 required");
    return ErrorProfile(std::vector<double>(static_cast<size_t>(t_mpr), p_e));
}

ErrorProfile ErrorProfile::zeros(int t_mpr) { return uniform(t_mpr, 0.0); }

double ErrorProfile::at(int t) const {
    if (t < 1) throw ValidationError("error profile: t >= 1 required");
    if (t > t_mpr()) return 1.0;  // P_E|(T+1) = 1 by convention
    return probs_[static_cast<size_t>(t) - 1];
}

}  // namespace irsa
