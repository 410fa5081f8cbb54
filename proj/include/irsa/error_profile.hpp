#pragma once

#include <vector>

namespace irsa {

// Conditional slot-decoding error probabilities P_E|t for t = 1..T.
// Entries must lie in [0,1] and be nondecreasing in t.
class ErrorProfile {
public:
    explicit ErrorProfile(std::vector<double> probs);

    static ErrorProfile uniform(int t_mpr, double p_e);
    static ErrorProfile zeros(int t_mpr);

    int t_mpr() const { return static_cast<int>(probs_.size()); }
    double at(int t) const;  // P_E|t, 1-based; P_E|(T+1) conventionally 1
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

}  // namespace irsa
