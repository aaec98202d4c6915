#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weylscope {

struct RunOutput {
    int exit_code = 0;        // 0 ok, 2 validation, 3 budget, 4 property violation
    std::string summary;      // human-readable stdout text
    std::vector<std::string> files;
};

struct CliOverrides {
    std::vector<std::string> sets; // key=value, keys: seed, workers, budgets.terms,
                                   // output.path, output.format, params.<name>
    std::optional<std::string> out_path;
    std::optional<std::string> out_format;
    std::optional<int> workers;
    std::optional<std::uint64_t> seed;
};

/// Parses the config document (strict keys at every level), applies overrides,
/// dispatches to the named experiment, writes result files plus a run manifest.
/// Throws invalid_input on validation errors and budget_exceeded on budget.
RunOutput run_from_config_text(const std::string& config_json, const CliOverrides& overrides = {});

} // namespace weylscope
