#include "irsa/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "irsa/config.hpp"
#include "irsa/csv.hpp"
#include "irsa/density_evolution.hpp"
#include "irsa/distribution.hpp"
#include "irsa/errors.hpp"
#include "irsa/monte_carlo.hpp"
#include "irsa/phy.hpp"
#include "irsa/threshold.hpp"
#include "irsa/tradeoff.hpp"

namespace irsa {

namespace {

constexpr const char* kVersion = "1.0.0";

IrsaDistribution protocol_distribution(const RawConfig& cfg) {
    return IrsaDistribution::parse(cfg.get_string("protocol", "distribution"));
}

int protocol_t_mpr(const RawConfig& cfg) {
    int t = cfg.get_int("protocol", "t_mpr");
    if (t < 1) throw ValidationError("protocol: t_mpr >= 1");
    return t;
}

ErrorProfile error_profile(const RawConfig& cfg, int t_mpr) {
    if (cfg.has_key("errors", "profile")) {
        auto probs = cfg.get_double_list("errors", "profile");
        if (static_cast<int>(probs.size()) != t_mpr) {
            throw ValidationError("errors: profile length must equal t_mpr");
        }
        return ErrorProfile(probs);
    }
    if (cfg.has_key("errors", "uniform")) {
        return ErrorProfile::uniform(t_mpr, cfg.get_double("errors", "uniform"));
    }
    throw ConfigParseError("errors: need 'profile' or 'uniform'");
}

std::string output_prefix(const RawConfig& cfg, const std::string& fallback) {
    if (cfg.has_key("output", "prefix")) return cfg.get_string("output", "prefix");
    return fallback;
}

struct RunContext {
    RawConfig cfg;
    RunOptions options;
    std::string prefix;
    std::uint64_t config_hash = 0;
    std::vector<std::string> outputs;

    std::string path(const std::string& suffix) const {
        return options.output_dir + "/" + prefix + suffix;
    }
    void emit(CsvWriter& csv, const std::string& suffix) {
        csv.add_meta("config_hash", std::to_string(config_hash));
        std::string p = path(suffix);
        csv.write(p);
        outputs.push_back(p);
    }
};

void run_de_command(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    IrsaDistribution dist = protocol_distribution(cfg);
    ErrorProfile errors = error_profile(cfg, protocol_t_mpr(cfg));
    auto loads = cfg.get_double_list("de", "g");
    double gamma = cfg.get_double_or("de", "gamma", 1.0);
    int max_iters = cfg.get_int_or("de", "max_iters", 10000);
    double fp_tol = cfg.get_double_or("de", "fp_tolerance", 1e-12);

    CsvWriter summary({"g", "p_infinity", "plr", "fixed_point"});
    for (size_t i = 0; i < loads.size(); ++i) {
        DeParams params{dist, errors, loads[i], gamma, max_iters, fp_tol};
        DeState state = run_de(params);
        CsvWriter traj({"iteration", "p", "q"});
        traj.add_meta("g", CsvWriter::format(loads[i]));
        for (size_t l = 0; l < state.trajectory.size(); ++l) {
            traj.add_row({static_cast<double>(l), state.trajectory[l].first,
                          state.trajectory[l].second});
        }
        ctx.emit(traj, "_de_traj_" + std::to_string(i) + ".csv");
        summary.add_row({loads[i], state.p_infinity, asymptotic_plr(state.p_infinity, dist),
                         state.converged_reason == DeStopReason::FixedPoint ? 1.0 : 0.0});
    }
    ctx.emit(summary, "_de_summary.csv");
}

void run_exit_chart(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    IrsaDistribution dist = protocol_distribution(cfg);
    ErrorProfile errors = error_profile(cfg, protocol_t_mpr(cfg));
    auto loads = cfg.get_double_list("exit", "g");
    int samples = cfg.get_int_or("exit", "samples", 201);

    bool fb_written = false;
    CsvWriter crossings({"g", "p_crossing"});
    for (size_t i = 0; i < loads.size(); ++i) {
        DeParams params{dist, errors, loads[i], 1.0, 10000, 1e-12};
        ExitChartData chart = exit_chart(params, samples);
        if (!fb_written) {
            CsvWriter fb_curve({"p", "fb"});
            for (size_t j = 0; j < chart.p.size(); ++j) {
                fb_curve.add_row({chart.p[j], chart.fb_of_p[j]});
            }
            ctx.emit(fb_curve, "_fb.csv");
            fb_written = true;
        }
        CsvWriter fs_curve({"q", "fs"});
        fs_curve.add_meta("g", CsvWriter::format(loads[i]));
        for (size_t j = 0; j < chart.q.size(); ++j) {
            fs_curve.add_row({chart.q[j], chart.fs_of_q[j]});
        }
        ctx.emit(fs_curve, "_fs_" + std::to_string(i) + ".csv");
        for (double root : exit_crossings(params)) {
            crossings.add_row({loads[i], root});
        }
    }
    ctx.emit(crossings, "_crossings.csv");
}

void run_threshold(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    IrsaDistribution dist = protocol_distribution(cfg);
    ErrorProfile errors = error_profile(cfg, protocol_t_mpr(cfg));
    ThresholdQuery query;
    query.dist = dist;
    query.errors = errors;
    query.e = cfg.get_double_or("threshold", "e", 0.5);
    query.g_lo = cfg.get_double_or("threshold", "g_lo", 1e-3);
    query.g_hi = cfg.get_double_or("threshold", "g_hi", 10.0);
    query.g_tolerance = cfg.get_double_or("threshold", "g_tolerance", 1e-3);
    query.validate();

    double g_star = threshold_gmac(query);
    double g0 = std::numeric_limits<double>::quiet_NaN();
    if (cfg.get_bool_or("threshold", "compute_g0", true)) {
        auto onset = g0_onset(dist, errors, query.g_hi,
                              cfg.get_double_or("threshold", "g0_e_probe", query.e));
        if (onset) g0 = *onset;
    }
    CsvWriter out({"e", "g_star", "g0"});
    out.add_row({query.e, g_star, g0});
    ctx.emit(out, "_threshold.csv");
}

void run_boundary(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    int t_mpr = cfg.get_int("boundary", "t_mpr");
    double lambda1 = cfg.get_double_or("boundary", "lambda1", 0.0);
    double e = cfg.get_double_or("boundary", "e", 0.0);

    CsvWriter out({"x", "g_cb", "binding", "g1", "g2"});
    auto solve_row = [&](double x, double eta, double pe1) {
        BoundaryQuery query;
        query.eta = eta;
        query.lambda1 = lambda1;
        query.t_mpr = t_mpr;
        query.errors = ErrorProfile::uniform(t_mpr, pe1);
        query.e = e;
        BoundaryResult result = boundary_gmac(query);
        out.add_row({x, result.g_cb, result.binding == BindingBound::G1 ? 1.0 : 2.0, result.g1,
                     result.g2});
    };
    if (cfg.has_key("boundary", "pe1_sweep")) {
        double eta = cfg.get_double("boundary", "eta");
        for (double pe1 : cfg.get_double_list("boundary", "pe1_sweep")) {
            solve_row(pe1, eta, pe1);
        }
    } else if (cfg.has_key("boundary", "eta_sweep")) {
        double pe1 = cfg.get_double("boundary", "pe1");
        for (double eta : cfg.get_double_list("boundary", "eta_sweep")) {
            solve_row(eta, eta, pe1);
        }
    } else {
        throw ConfigParseError("boundary: need 'pe1_sweep' or 'eta_sweep'");
    }
    ctx.emit(out, "_boundary.csv");
}

SimConfig monte_carlo_config(const RawConfig& cfg, const RunOptions& options) {
    SimConfig sim{protocol_distribution(cfg), error_profile(cfg, protocol_t_mpr(cfg))};
    sim.n_slots = cfg.get_int("mc", "n_slots");
    sim.n_frames = cfg.get_long_or("mc", "n_frames", 1000);
    sim.rng_seed = static_cast<std::uint64_t>(cfg.get_long_or("mc", "seed", 1));
    if (options.seed_override) sim.rng_seed = *options.seed_override;
    sim.max_sic_iters = cfg.get_int_or("mc", "max_sic_iters", 0);
    sim.retry_failed_slots = cfg.get_bool_or("mc", "retry_failed_slots", false);
    sim.validate();
    return sim;
}

void run_monte_carlo(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    SimConfig sim = monte_carlo_config(cfg, ctx.options);
    auto loads = cfg.get_double_list("mc", "g");

    CsvWriter out({"g", "plr", "ci95", "frames", "mean_sic_iterations"});
    out.add_meta("seed", std::to_string(sim.rng_seed));
    out.add_meta("n_slots", std::to_string(sim.n_slots));
    out.add_meta("rng", "splitmix64-per-frame");
    for (double g : loads) {
        SimConfig point = sim;
        int k_a = static_cast<int>(std::lround(g * sim.n_slots));
        point.load_mode = FixedKa{k_a};
        // decorrelate load points without reusing frame substreams
        point.rng_seed = splitmix64(sim.rng_seed ^ static_cast<std::uint64_t>(k_a + 1));
        point.validate();
        SimResult result = estimate_plr(point, ctx.options.threads);
        out.add_row({g, result.plr_mean, result.plr_ci95_halfwidth,
                     static_cast<double>(result.frames_run), result.mean_sic_iterations});
    }
    ctx.emit(out, "_mc.csv");
}

ScenarioSpec tradeoff_scenario(const RawConfig& cfg) {
    ScenarioSpec spec;
    spec.log2_m = cfg.get_double_or("tradeoff", "log2_m", 100.0);
    spec.target_eps = cfg.get_double_or("tradeoff", "eps", 0.005);
    std::string option = cfg.has_key("tradeoff", "option") ? cfg.get_string("tradeoff", "option")
                                                           : std::string("option1");
    if (option == "option1") {
        spec.phy_option = PhyOption::Option1;
    } else if (option == "option2") {
        spec.phy_option = PhyOption::Option2;
    } else if (option == "option2-2layer") {
        spec.phy_option = PhyOption::Option2TwoLayer;
        spec.rate_multiplier = cfg.get_double("tradeoff", "rate_multiplier");
    } else {
        throw ConfigParseError("tradeoff: unknown option '" + option + "'");
    }
    spec.redundancy_r = cfg.get_int_or("tradeoff", "redundancy_r", -1);
    if (cfg.has_section("protocol")) {
        spec.dist = protocol_distribution(cfg);
        spec.t_mpr = protocol_t_mpr(cfg);
        spec.lambda1 = spec.dist->lambda1();
    } else {
        spec.t_mpr = cfg.get_int("tradeoff", "t_mpr");
        spec.lambda1 = cfg.get_double_or("tradeoff", "lambda1", 0.0);
    }
    spec.ebno_lo_db = cfg.get_double_or("tradeoff", "ebno_lo_db", -2.0);
    spec.ebno_hi_db = cfg.get_double_or("tradeoff", "ebno_hi_db", 30.0);
    spec.ebno_tol_db = cfg.get_double_or("tradeoff", "ebno_tol_db", 0.01);
    spec.eta_grid_points = cfg.get_int_or("tradeoff", "eta_grid_points", 25);
    if (cfg.has_key("tradeoff", "n_grid")) {
        for (double n : cfg.get_double_list("tradeoff", "n_grid")) {
            spec.n_grid.push_back(static_cast<int>(std::lround(n)));
        }
    }
    if (cfg.has_key("tradeoff", "e_grid")) spec.e_grid = cfg.get_double_list("tradeoff", "e_grid");
    spec.validate();
    return spec;
}

void run_tradeoff(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    ScenarioSpec spec = tradeoff_scenario(cfg);
    std::string mode = cfg.has_key("tradeoff", "mode") ? cfg.get_string("tradeoff", "mode")
                                                       : std::string("spectrum");
    std::vector<TradeoffPoint> points;
    if (mode == "spectrum") {
        points = sweep_spectrum(spec, cfg.get_double_list("tradeoff", "s"));
    } else if (mode == "ka") {
        std::vector<int> ka_grid;
        for (double ka : cfg.get_double_list("tradeoff", "ka")) {
            ka_grid.push_back(static_cast<int>(std::lround(ka)));
        }
        points = sweep_ka(spec, ka_grid, cfg.get_long_or("tradeoff", "frame_n", 30000));
    } else {
        throw ConfigParseError("tradeoff: unknown mode '" + mode + "'");
    }
    CsvWriter out({"x", "ebno_db", "n_opt", "e_opt", "eta_opt", "feasible"});
    for (const auto& p : points) {
        out.add_row({p.x, p.feasible ? p.ebno_db : std::numeric_limits<double>::quiet_NaN(),
                     static_cast<double>(p.n_opt), p.e_opt, p.eta_opt, p.feasible ? 1.0 : 0.0});
    }
    ctx.emit(out, "_tradeoff.csv");
}

void run_estimators(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    double snr = cfg.get_ratio_linear("estimators", "snr");
    int n = cfg.get_int("estimators", "n");
    int t_max = cfg.get_int_or("estimators", "t_max", 4);
    CsvWriter out({"kind", "x", "failure_prob"});
    for (int t = 1; t <= t_max; ++t) {
        out.add_mixed_row({"energy", std::to_string(t),
                           CsvWriter::format(energy_estimator_failure(t, snr, n))});
    }
    if (cfg.has_key("estimators", "n_pilots")) {
        for (double np : cfg.get_double_list("estimators", "n_pilots")) {
            int npi = static_cast<int>(std::lround(np));
            out.add_mixed_row({"pilot", std::to_string(npi),
                               CsvWriter::format(pilot_estimator_failure(npi, snr))});
        }
    }
    ctx.emit(out, "_estimators.csv");
}

using CommandFn = void (*)(RunContext&);

struct CommandEntry {
    const char* name;
    CommandFn run;
};

constexpr CommandEntry kCommands[] = {
    {"de", run_de_command},         {"exit-chart", run_exit_chart},
    {"threshold", run_threshold},   {"boundary", run_boundary},
    {"monte-carlo", run_monte_carlo}, {"tradeoff", run_tradeoff},
    {"estimators", run_estimators},
};

CommandFn find_command(const std::string& name) {
    for (const auto& entry : kCommands) {
        if (name == entry.name) return entry.run;
    }
    throw ConfigParseError("config: unknown command '" + name + "'");
}

// Builds every typed object for validation purposes, without computing.
void dry_run(const RawConfig& cfg) {
    const std::string command = cfg.get_string("", "command");
    find_command(command);
    if (command == "de" || command == "exit-chart" || command == "threshold" ||
        command == "monte-carlo") {
        IrsaDistribution dist = protocol_distribution(cfg);
        ErrorProfile errors = error_profile(cfg, protocol_t_mpr(cfg));
        (void)dist;
        (void)errors;
    }
    if (command == "de") {
        for (double g : cfg.get_double_list("de", "g")) {
            DeParams params{protocol_distribution(cfg), error_profile(cfg, protocol_t_mpr(cfg)), g,
                            cfg.get_double_or("de", "gamma", 1.0),
                            cfg.get_int_or("de", "max_iters", 10000),
                            cfg.get_double_or("de", "fp_tolerance", 1e-12)};
            params.validate();
        }
    } else if (command == "exit-chart") {
        for (double g : cfg.get_double_list("exit", "g")) {
            DeParams params{protocol_distribution(cfg), error_profile(cfg, protocol_t_mpr(cfg)), g,
                            1.0, 10000, 1e-12};
            params.validate();
        }
        if (cfg.get_int_or("exit", "samples", 201) < 2) {
            throw ValidationError("exit: samples >= 2");
        }
    } else if (command == "threshold") {
        ThresholdQuery query;
        query.dist = protocol_distribution(cfg);
        query.errors = error_profile(cfg, protocol_t_mpr(cfg));
        query.e = cfg.get_double_or("threshold", "e", 0.5);
        query.g_lo = cfg.get_double_or("threshold", "g_lo", 1e-3);
        query.g_hi = cfg.get_double_or("threshold", "g_hi", 10.0);
        query.g_tolerance = cfg.get_double_or("threshold", "g_tolerance", 1e-3);
        query.validate();
    } else if (command == "boundary") {
        BoundaryQuery query;
        query.t_mpr = cfg.get_int("boundary", "t_mpr");
        query.lambda1 = cfg.get_double_or("boundary", "lambda1", 0.0);
        query.e = cfg.get_double_or("boundary", "e", 0.0);
        if (cfg.has_key("boundary", "pe1_sweep")) {
            query.eta = cfg.get_double("boundary", "eta");
            auto sweep = cfg.get_double_list("boundary", "pe1_sweep");
            query.errors = ErrorProfile::uniform(query.t_mpr, sweep.front());
        } else if (cfg.has_key("boundary", "eta_sweep")) {
            query.eta = cfg.get_double_list("boundary", "eta_sweep").front();
            query.errors = ErrorProfile::uniform(query.t_mpr, cfg.get_double("boundary", "pe1"));
        } else {
            throw ConfigParseError("boundary: need 'pe1_sweep' or 'eta_sweep'");
        }
        query.validate();
    } else if (command == "monte-carlo") {
        RunOptions null_options;
        SimConfig sim = monte_carlo_config(cfg, null_options);
        for (double g : cfg.get_double_list("mc", "g")) {
            if (!(g >= 0.0)) throw ValidationError("mc: loads must be nonnegative");
        }
        (void)sim;
    } else if (command == "tradeoff") {
        ScenarioSpec spec = tradeoff_scenario(cfg);
        std::string mode = cfg.has_key("tradeoff", "mode") ? cfg.get_string("tradeoff", "mode")
                                                           : std::string("spectrum");
        if (mode == "spectrum") {
            cfg.get_double_list("tradeoff", "s");
        } else if (mode == "ka") {
            cfg.get_double_list("tradeoff", "ka");
        } else {
            throw ConfigParseError("tradeoff: unknown mode '" + mode + "'");
        }
        (void)spec;
    } else if (command == "estimators") {
        double snr = cfg.get_ratio_linear("estimators", "snr");
        if (cfg.get_int("estimators", "n") < 1) throw ValidationError("estimators: n >= 1");
        (void)snr;
    }
}

}  // namespace

void run_config(const std::string& config_path, const RunOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    RunContext ctx{RawConfig::parse_file(config_path), options, "", 0, {}};
    dry_run(ctx.cfg);
    const std::string command = ctx.cfg.get_string("", "command");
    ctx.prefix = output_prefix(ctx.cfg, command);
    ctx.config_hash = fnv1a(ctx.cfg.text());
    find_command(command)(ctx);

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config"] = config_path;
    manifest["config_hash"] = ctx.config_hash;
    manifest["version"] = kVersion;
    manifest["rng"] = "splitmix64-per-frame";
    manifest["threads"] = options.threads;
    if (options.seed_override) manifest["seed_override"] = *options.seed_override;
    manifest["wall_time_s"] = wall;
    manifest["outputs"] = ctx.outputs;
    std::ofstream out(ctx.path("_manifest.json"));
    if (!out) throw ValidationError("manifest: cannot write " + ctx.path("_manifest.json"));
    out << manifest.dump(2) << '\n';
}

void validate_config(const std::string& config_path) {
    RawConfig cfg = RawConfig::parse_file(config_path);
    dry_run(cfg);
    std::cout << "ok: " << config_path << " (command "
              << cfg.get_string("", "command") << ")\n";
}

}  // namespace irsa
