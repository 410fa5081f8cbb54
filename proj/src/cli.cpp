#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "irsa/errors.hpp"
#include "irsa/runner.hpp"

namespace irsa {

namespace {

int dispatch(const std::string& mode, const std::string& config, const RunOptions& options) {
    try {
        if (mode == "run") {
            run_config(config, options);
        } else {
            validate_config(config);
        }
        return 0;
    } catch (const ConfigParseError& err) {
        std::cerr << "error[config-parse]: " << err.what() << '\n';
        return 2;
    } catch (const ValidationError& err) {
        std::cerr << "error[validation]: " << err.what() << '\n';
        return 3;
    } catch (const DomainError& err) {
        std::cerr << "error[validation]: " << err.what() << '\n';
        return 3;
    } catch (const BracketError& err) {
        std::cerr << "error[validation]: " << err.what() << '\n';
        return 3;
    } catch (const InfeasibleError& err) {
        std::cerr << "error[infeasible]: " << err.what() << '\n';
        return 4;
    } catch (const IntegrationError& err) {
        std::cerr << "error[integration]: " << err.what() << '\n';
        return 5;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"IRSA random access analysis and simulation"};
    app.require_subcommand(1);

    RunOptions options;
    std::string config_path;
    std::uint64_t seed = 0;

    auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
    run_cmd->add_option("config", config_path, "experiment config file")->required();
    run_cmd->add_option("--output-dir", options.output_dir, "directory for CSV artifacts");
    run_cmd->add_option("--threads", options.threads, "worker cap for frame-parallel commands");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "override the config RNG seed");

    auto* validate_cmd = app.add_subcommand("validate", "check a config without computing");
    validate_cmd->add_option("config", config_path, "experiment config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (seed_opt->count() > 0) options.seed_override = seed;
    return dispatch(app.got_subcommand(run_cmd) ? "run" : "validate", config_path, options);
}

}  // namespace irsa
