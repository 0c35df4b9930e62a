/* main.cpp
 *
 * Command-line front end: load a config file, apply flag overrides, run the
 * Monte Carlo sweep, and write results.csv / results.json / metadata.json
 * into the output directory. With --single, solve one scenario instead and
 * write the detailed per-user report to single.json.
 */
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimogames/config.hpp"
#include "mimogames/report_io.hpp"
#include "mimogames/version.hpp"

namespace {

using namespace mimogames;

int run_main(int argc, char** argv) {
    CLI::App app{"Nash-equilibrium power control games for a multiuser MIMO uplink"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int trials = 0;
    int threads = 0;
    std::vector<std::string> games;
    std::vector<int> k_values;
    std::vector<int> nrx_values;
    bool single = false;

    app.add_option("--config", config_path, "Config file (INI sections: sweep, params, model, solver, output)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Base RNG seed");
    app.add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
    app.add_option("--games", games, "Game kinds (comma separated)")->delimiter(',');
    app.add_option("--k", k_values, "User counts (comma separated)")->delimiter(',');
    app.add_option("--nrx", nrx_values, "Receive antenna counts (comma separated)")->delimiter(',');
    app.add_option("--threads", threads, "Worker threads for trials")->check(CLI::PositiveNumber);
    app.add_flag("--single", single, "Solve one scenario and write single.json");

    CLI11_PARSE(app, argc, argv);

    RunConfig config = config_path.empty() ? parse_config("") : load_config_file(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (app.count("--seed")) config.sweep.base_seed = seed;
    if (app.count("--trials")) config.sweep.trials = trials;
    if (app.count("--threads")) config.sweep.threads = threads;
    if (!games.empty()) {
        config.sweep.kinds.clear();
        for (const std::string& name : games) config.sweep.kinds.push_back(game_kind_from_name(name));
    }
    if (!k_values.empty()) config.sweep.k_values = k_values;
    if (!nrx_values.empty()) config.sweep.nrx_values = nrx_values;
    validate(config.sweep);

    if (single) {
        const std::string content = single_report_json_string(config);
        std::filesystem::create_directories(config.out_dir);
        const std::string path = (std::filesystem::path(config.out_dir) / "single.json").string();
        write_text_file(path, content);
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const SweepSummary summary = run_sweep(config.sweep);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const std::string& path : write_run_outputs(config, summary, wall))
        std::printf("wrote %s\n", path.c_str());
    std::printf("%zu cells, %d trials each, %.1f s\n", summary.cells.size(), config.sweep.trials,
                wall);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
