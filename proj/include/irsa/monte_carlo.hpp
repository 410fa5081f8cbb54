#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "irsa/distribution.hpp"
#include "irsa/error_profile.hpp"

namespace irsa {

// Fixed number of active users per frame.
struct FixedKa {
    int k_a = 0;
};

// Each of k_users activates independently with probability pi.
struct BernoulliActivation {
    double pi = 0.0;
    int k_users = 0;
};

using LoadMode = std::variant<FixedKa, BernoulliActivation>;

struct SimConfig {
    IrsaDistribution dist;
    ErrorProfile errors;
    int n_slots = 0;
    LoadMode load_mode = FixedKa{0};
    long n_frames = 1;
    std::uint64_t rng_seed = 1;
    int max_sic_iters = 0;  // 0 means n_slots
    // A slot that failed its decoding draw stays failed until its residual
    // degree changes; set true to re-draw it every iteration instead.
    bool retry_failed_slots = false;

    void validate() const;
};

// One frame of the user/slot bipartite graph: per active user, the set of
// distinct slots carrying its replicas.
struct FrameGraph {
    int n_slots = 0;
    std::vector<std::vector<int>> user_slots;
};

struct SimResult {
    double plr_mean = 0.0;
    double plr_ci95_halfwidth = 0.0;
    long frames_run = 0;
    double mean_sic_iterations = 0.0;
    long packets_total = 0;
    long packets_lost = 0;
};

// SplitMix64 mix used to derive independent per-frame substreams.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic uniform double in [0,1) from a 64-bit generator draw.
double uniform01(std::uint64_t word);

class FrameRng {
public:
    FrameRng(std::uint64_t seed, std::uint64_t frame_index);
    std::uint64_t next();
    double next_double() { return uniform01(next()); }

private:
    std::uint64_t state_;
};

// Samples one frame: degrees i.i.d. from the distribution, slot sets drawn
// uniformly without replacement.
FrameGraph generate_frame(const SimConfig& cfg, FrameRng& rng);

struct SicOutcome {
    std::vector<bool> decoded;  // per active user
    int iterations = 0;
    int decoded_count = 0;
};

// Iterative SIC peeling with Bernoulli slot-decoding errors: each sweep
// attempts every unresolved slot of residual degree 1..T against the current
// state, then cancels all newly decoded users at once.
SicOutcome run_sic(const FrameGraph& graph, const ErrorProfile& errors, FrameRng& rng,
                   int max_iters, bool retry_failed_slots = false);

// Monte Carlo packet loss estimate across cfg.n_frames independent frames;
// deterministic for a fixed seed, parallelizable over frames.
SimResult estimate_plr(const SimConfig& cfg, int threads = 1);

}  // namespace irsa
