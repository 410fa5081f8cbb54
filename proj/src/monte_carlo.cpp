#include "irsa/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "irsa/errors.hpp"

namespace irsa {

void SimConfig::validate() const {
    if (n_slots < 1) throw ValidationError("sim: n_slots >= 1");
    if (n_frames < 1) throw ValidationError("sim: n_frames >= 1");
    if (max_sic_iters < 0) throw ValidationError("sim: max_sic_iters >= 0");
    if (dist.dmax() > n_slots) {
        throw ValidationError("sim: max degree exceeds the number of slots");
    }
    if (const auto* fixed = std::get_if<FixedKa>(&load_mode)) {
        if (fixed->k_a < 0) throw ValidationError("sim: k_a >= 0");
    } else {
        const auto& bern = std::get<BernoulliActivation>(load_mode);
        if (!(bern.pi >= 0.0 && bern.pi <= 1.0)) throw ValidationError("sim: pi in [0,1]");
        if (bern.k_users < 1) throw ValidationError("sim: k_users >= 1");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t frame_index)
    : state_(splitmix64(seed ^ splitmix64(frame_index))) {}

std::uint64_t FrameRng::next() {
    // SplitMix64 stream; statistically solid for this sampling workload and
    // trivially reproducible across platforms.
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

int sample_degree(const IrsaDistribution& dist, FrameRng& rng) {
    double u = rng.next_double();
    const auto& probs = dist.probs();
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i) + 1;
    }
    return dist.dmax();
}

// Floyd's algorithm: d distinct slot indices in [0, n_slots).
void sample_slots(int d, int n_slots, FrameRng& rng, std::vector<int>& out) {
    out.clear();
    for (int j = n_slots - d; j < n_slots; ++j) {
        int t = static_cast<int>(rng.next() % static_cast<std::uint64_t>(j + 1));
        if (std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        } else {
            out.push_back(j);
        }
    }
}

}  // namespace

FrameGraph generate_frame(const SimConfig& cfg, FrameRng& rng) {
    cfg.validate();
    FrameGraph graph;
    graph.n_slots = cfg.n_slots;
    int k_a = 0;
    if (const auto* fixed = std::get_if<FixedKa>(&cfg.load_mode)) {
        k_a = fixed->k_a;
    } else {
        const auto& bern = std::get<BernoulliActivation>(cfg.load_mode);
        for (int u = 0; u < bern.k_users; ++u) {
            if (rng.next_double() < bern.pi) ++k_a;
        }
    }
    graph.user_slots.resize(static_cast<size_t>(k_a));
    for (auto& slots : graph.user_slots) {
        int d = sample_degree(cfg.dist, rng);
        if (d > cfg.n_slots) throw ValidationError("sim: degree exceeds the number of slots");
        sample_slots(d, cfg.n_slots, rng, slots);
    }
    return graph;
}

SicOutcome run_sic(const FrameGraph& graph, const ErrorProfile& errors, FrameRng& rng,
                   int max_iters, bool retry_failed_slots) {
    const int n_users = static_cast<int>(graph.user_slots.size());
    const int t_mpr = errors.t_mpr();

    std::vector<int> slot_degree(static_cast<size_t>(graph.n_slots), 0);
    std::vector<std::vector<int>> slot_users(static_cast<size_t>(graph.n_slots));
    for (int u = 0; u < n_users; ++u) {
        for (int s : graph.user_slots[static_cast<size_t>(u)]) {
            slot_degree[static_cast<size_t>(s)]++;
            slot_users[static_cast<size_t>(s)].push_back(u);
        }
    }

    SicOutcome out;
    out.decoded.assign(static_cast<size_t>(n_users), false);
    // Residual degree at the last failed attempt; attempts repeat only after
    // cancellation changed the degree (unless retry_failed_slots).
    std::vector<int> failed_at(static_cast<size_t>(graph.n_slots), -1);
    std::vector<int> newly_decoded;

    for (int iter = 0; iter < max_iters; ++iter) {
        newly_decoded.clear();
        for (int s = 0; s < graph.n_slots; ++s) {
            int deg = slot_degree[static_cast<size_t>(s)];
            if (deg < 1 || deg > t_mpr) continue;
            if (!retry_failed_slots && failed_at[static_cast<size_t>(s)] == deg) continue;
            if (rng.next_double() < 1.0 - errors.at(deg)) {
                // slot resolved: every remaining user in it is decoded
                for (int u : slot_users[static_cast<size_t>(s)]) {
                    if (!out.decoded[static_cast<size_t>(u)]) {
                        out.decoded[static_cast<size_t>(u)] = true;
                        newly_decoded.push_back(u);
                    }
                }
            } else {
                failed_at[static_cast<size_t>(s)] = deg;
            }
        }
        if (newly_decoded.empty()) break;
        out.iterations = iter + 1;
        out.decoded_count += static_cast<int>(newly_decoded.size());
        // interference cancellation: remove every replica of decoded users
        for (int u : newly_decoded) {
            for (int s : graph.user_slots[static_cast<size_t>(u)]) {
                auto& users = slot_users[static_cast<size_t>(s)];
                users.erase(std::remove(users.begin(), users.end(), u), users.end());
                slot_degree[static_cast<size_t>(s)]--;
            }
        }
    }
    return out;
}

namespace {

struct ChunkStats {
    long packets = 0;
    long lost = 0;
    long frames = 0;
    double plr_sum = 0.0;   // per-frame loss ratios
    double plr_sqsum = 0.0;
    double iter_sum = 0.0;
};

ChunkStats run_chunk(const SimConfig& cfg, long first, long last) {
    ChunkStats stats;
    const int max_iters = cfg.max_sic_iters > 0 ? cfg.max_sic_iters : cfg.n_slots;
    for (long f = first; f < last; ++f) {
        FrameRng rng(cfg.rng_seed, static_cast<std::uint64_t>(f));
        FrameGraph graph = generate_frame(cfg, rng);
        const long k_a = static_cast<long>(graph.user_slots.size());
        double frame_plr = 0.0;
        if (k_a > 0) {
            SicOutcome outcome = run_sic(graph, cfg.errors, rng, max_iters, cfg.retry_failed_slots);
            long lost = k_a - outcome.decoded_count;
            stats.packets += k_a;
            stats.lost += lost;
            stats.iter_sum += outcome.iterations;
            frame_plr = static_cast<double>(lost) / static_cast<double>(k_a);
        }
        stats.frames += 1;
        stats.plr_sum += frame_plr;
        stats.plr_sqsum += frame_plr * frame_plr;
    }
    return stats;
}

}  // namespace

SimResult estimate_plr(const SimConfig& cfg, int threads) {
    cfg.validate();
    if (threads < 1) threads = 1;

    // Fixed chunking keeps the reduction order independent of the thread
    // count, so results are byte-stable for a given seed.
    constexpr long kChunk = 1024;
    const long n_chunks = (cfg.n_frames + kChunk - 1) / kChunk;
    std::vector<ChunkStats> partials(static_cast<size_t>(n_chunks));

    if (threads == 1 || n_chunks == 1) {
        for (long c = 0; c < n_chunks; ++c) {
            partials[static_cast<size_t>(c)] =
                run_chunk(cfg, c * kChunk, std::min(cfg.n_frames, (c + 1) * kChunk));
        }
    } else {
        std::atomic<long> next_chunk{0};
        auto worker = [&]() {
            for (;;) {
                long c = next_chunk.fetch_add(1);
                if (c >= n_chunks) return;
                partials[static_cast<size_t>(c)] =
                    run_chunk(cfg, c * kChunk, std::min(cfg.n_frames, (c + 1) * kChunk));
            }
        };
        std::vector<std::thread> pool;
        int n_workers = std::min<long>(threads, n_chunks);
        pool.reserve(static_cast<size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ChunkStats total;
    for (const auto& part : partials) {
        total.packets += part.packets;
        total.lost += part.lost;
        total.frames += part.frames;
        total.plr_sum += part.plr_sum;
        total.plr_sqsum += part.plr_sqsum;
        total.iter_sum += part.iter_sum;
    }

    SimResult result;
    result.frames_run = total.frames;
    result.packets_total = total.packets;
    result.packets_lost = total.lost;
    result.plr_mean =
        total.packets > 0 ? static_cast<double>(total.lost) / static_cast<double>(total.packets) : 0.0;
    result.mean_sic_iterations =
        total.frames > 0 ? total.iter_sum / static_cast<double>(total.frames) : 0.0;
    if (total.frames > 1) {
        double n = static_cast<double>(total.frames);
        double mean = total.plr_sum / n;
        double var = std::max(0.0, (total.plr_sqsum - n * mean * mean) / (n - 1.0));
        result.plr_ci95_halfwidth = 1.959963984540054 * std::sqrt(var / n);
    }
    return result;
}

}  // namespace irsa
