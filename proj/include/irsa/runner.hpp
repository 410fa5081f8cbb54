#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace irsa {

struct RunOptions {
    std::string output_dir = ".";
    int threads = 1;
    std::optional<std::uint64_t> seed_override;
};

// Executes the experiment described by the config file; writes CSV artifacts
// and a JSON run manifest into output_dir. Throws the library error taxonomy.
void run_config(const std::string& config_path, const RunOptions& options);

// Dry run: parses the config and constructs every referenced object so all
// invariants are checked, without computing. Prints a short report.
void validate_config(const std::string& config_path);

// Exit-code mapping for the CLI:
// 0 ok, 2 config parse, 3 validation/domain, 4 infeasible, 5 integration,
// 1 anything else.
int run_cli(int argc, char** argv);

}  // namespace irsa
