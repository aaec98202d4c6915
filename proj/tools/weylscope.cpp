// weylscope: exponential-sum experiments from JSON configs.
//
//   weylscope <experiment> [--config file] [--set key=value]...
//             [--workers n] [--seed s] [--out path] [--format csv|json]
//
// Exit codes: 0 success, 2 validation error, 3 budget exceeded,
// 4 property violation (e.g. a structure detector emitted a review record).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weylscope/errors.hpp"
#include "weylscope/runner.hpp"
#include "weylscope/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exponential-sum laboratory"};
    app.set_version_flag("--version", weylscope::kVersion);

    std::string experiment;
    std::string config_path;
    weylscope::CliOverrides ov;
    std::string out_path, out_format;
    int workers = 0;
    std::uint64_t seed = 0;

    app.add_option("experiment", experiment,
                   "sum|scan|structure|cover|boxdim|formula|moment|verify|sweep");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--set", ov.sets, "override: key=value (params.<k>, seed, budgets.terms, ...)");
    auto* wopt = app.add_option("--workers", workers, "worker threads (0 = hardware)");
    auto* sopt = app.add_option("--seed", seed, "PRNG seed");
    auto* oopt = app.add_option("--out", out_path, "output file path");
    auto* fopt = app.add_option("--format", out_format, "csv or json");

    CLI11_PARSE(app, argc, argv);

    std::string config_text = "{}";
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "error: cannot read config file: " << config_path << "\n";
            return 2;
        }
        std::ostringstream buf;
        buf << is.rdbuf();
        config_text = buf.str();
    }
    if (!experiment.empty()) ov.sets.insert(ov.sets.begin(), "experiment=" + experiment);
    if (wopt->count()) ov.workers = workers;
    if (sopt->count()) ov.seed = seed;
    if (oopt->count()) ov.out_path = out_path;
    if (fopt->count()) ov.out_format = out_format;

    try {
        weylscope::RunOutput out = weylscope::run_from_config_text(config_text, ov);
        std::cout << out.summary;
        for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
        return out.exit_code;
    } catch (const weylscope::budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const weylscope::invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const weylscope::insufficient_data& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
