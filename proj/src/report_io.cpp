#include "mimogames/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mimogames/kernels.hpp"
#include "mimogames/version.hpp"

namespace mimogames {

namespace {

using nlohmann::json;

std::string g17(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

json cell_json(const CellStats& cell) {
    return json{{"game", game_kind_name(cell.kind)},
                {"K", cell.n_users},
                {"n_rx", cell.n_rx},
                {"mean_utility_bits_per_joule", cell.mean_utility},
                {"mean_power_w", cell.mean_power_w},
                {"mean_power_dbw", to_db(cell.mean_power_w)},
                {"mean_sinr", cell.mean_sinr},
                {"mean_sinr_db", to_db(cell.mean_sinr)},
                {"convergence_rate", cell.convergence_rate},
                {"trials", cell.trials},
                {"se_utility", cell.se_utility},
                {"se_power", cell.se_power},
                {"se_sinr", cell.se_sinr}};
}

json params_json(const SystemParams& p) {
    return json{{"n_users", p.n_users},       {"n_tx", p.n_tx},
                {"n_rx", p.n_rx},             {"noise_psd", p.noise_psd},
                {"rate", p.rate},             {"packet_len", p.packet_len},
                {"info_len", p.info_len},     {"p_max_w", p.p_max},
                {"target_sinr", p.target_sinr}};
}

}  // namespace

std::string csv_string(const SweepSummary& summary) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const CellStats& cell : summary.cells) {
        out << game_kind_name(cell.kind) << ',' << cell.n_users << ',' << cell.n_rx << ','
            << g17(cell.mean_utility) << ',' << g17(cell.mean_power_w) << ','
            << g17(to_db(cell.mean_power_w)) << ',' << g17(cell.mean_sinr) << ','
            << g17(to_db(cell.mean_sinr)) << ',' << g17(cell.convergence_rate) << ','
            << cell.trials << ',' << g17(cell.se_utility) << ',' << g17(cell.se_power) << ','
            << g17(cell.se_sinr) << "\n";
    }
    return out.str();
}

std::string summary_json_string(const SweepSummary& summary) {
    json j;
    j["cells"] = json::array();
    for (const CellStats& cell : summary.cells) j["cells"].push_back(cell_json(cell));
    return j.dump(2) + "\n";
}

std::string metadata_json_string(const RunConfig& config, const SweepSummary& summary,
                                 double wall_seconds) {
    const SweepSpec& sw = config.sweep;
    json j;
    j["version"] = kVersion;
    j["rng_algorithm"] = kRngAlgorithm;
    j["base_seed"] = sw.base_seed;
    j["config"] = serialize_config(config);  // parses back to this exact run
    j["simd_lane"] = kernels::lane_name(kernels::active_lane());
    j["wall_seconds"] = wall_seconds;

    json resolved;
    resolved["trials"] = sw.trials;
    resolved["threads"] = sw.threads;
    resolved["channel_model"] = channel_model_name(sw.channel_model);
    resolved["placement"] = json{{"d_min", sw.placement.d_min},
                                 {"d_max", sw.placement.d_max},
                                 {"fixed_distances", sw.placement.fixed}};
    resolved["solver"] = json{{"power_tol", sw.solve.power_tol},
                              {"max_power_rounds", sw.solve.max_power_rounds},
                              {"max_outer_rounds", sw.solve.max_outer_rounds},
                              {"beam_tol", sw.solve.beam_tol},
                              {"max_beam_sweeps", sw.solve.max_beam_sweeps},
                              {"p0_fraction", sw.solve.p0_fraction}};
    resolved["params_by_cell"] = json::array();
    for (int k : sw.k_values)
        for (int n : sw.nrx_values)
            resolved["params_by_cell"].push_back(params_json(resolve_params(sw.overrides, k, n)));
    j["resolved"] = resolved;

    j["conventions"] = json{
        {"pooling", "means pool per-user values over users and converged trials; standard errors "
                    "from per-trial means"},
        {"cold_start", "all powers start at p0_fraction of each user's cap"},
        {"distance_draw", "uniform in [d_min, d_max] meters"},
        {"stream_derivation", "trial t uses RNG stream t from the base seed"}};

    j["cells"] = json::array();
    for (const CellStats& cell : summary.cells) {
        json c{{"game", game_kind_name(cell.kind)},
               {"K", cell.n_users},
               {"n_rx", cell.n_rx},
               {"trials", cell.trials},
               {"converged_trials", cell.converged_trials},
               {"error_trials", cell.error_trials}};
        if (!cell.first_error.empty()) c["first_error"] = cell.first_error;
        j["cells"].push_back(c);
    }
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> write_run_outputs(const RunConfig& config, const SweepSummary& summary,
                                           double wall_seconds) {
    std::filesystem::create_directories(config.out_dir);
    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = (std::filesystem::path(config.out_dir) / name).string();
        write_text_file(path, content);
        written.push_back(path);
    };
    if (config.write_csv) emit("results.csv", csv_string(summary));
    if (config.write_json) emit("results.json", summary_json_string(summary));
    emit("metadata.json", metadata_json_string(config, summary, wall_seconds));
    return written;
}

std::string single_report_json_string(const RunConfig& config) {
    const SweepSpec& sw = config.sweep;
    if (sw.k_values.size() != 1 || sw.nrx_values.size() != 1)
        throw std::invalid_argument(
            "single report: config must pin exactly one K and one n_rx value");
    const SystemParams params = resolve_params(sw.overrides, sw.k_values[0], sw.nrx_values[0]);
    Rng rng(sw.base_seed, 0);
    const Scenario scenario = sample_scenario(params, sw.placement, sw.channel_model, rng);

    json j;
    j["version"] = kVersion;
    j["rng_algorithm"] = kRngAlgorithm;
    j["base_seed"] = sw.base_seed;
    j["params"] = params_json(params);
    json sc;
    sc["distances"] = scenario.distances;
    sc["channels"] = json::array();
    for (const Matrix& h : scenario.channels)
        sc["channels"].push_back(json{{"rows", h.rows}, {"cols", h.cols}, {"entries", h.a}});
    j["scenario"] = sc;

    j["games"] = json::object();
    for (GameKind kind : sw.kinds) {
        const EquilibriumReport report = solve_game(scenario, params, kind, sw.solve);
        json g;
        g["converged"] = report.converged;
        g["outer_iterations"] = report.outer_iterations;
        g["total_power_rounds"] = report.total_power_rounds;
        g["power_residual"] = report.power_residual;
        g["powers_w"] = report.state.powers;
        g["sinr"] = report.sinr;
        g["utility_bits_per_joule"] = report.utility;
        g["beamformers"] = report.state.beamformers;
        g["filters"] = report.state.filters;
        if (kind == GameKind::sic_power) g["sic_order"] = report.state.sic.permutation;
        if (!report.capacity_trace.empty()) g["capacity_trace"] = report.capacity_trace;
        if (report.converged) {
            const NashCheck nash = verify_nash(scenario, params, report);
            g["nash"] = json{{"is_nash", nash.is_nash},
                             {"worst_gain", nash.worst_gain},
                             {"worst_user", nash.worst_user},
                             {"worst_power", nash.worst_power}};
        }
        j["games"][game_kind_name(kind)] = g;
    }
    return j.dump(2) + "\n";
}

}  // namespace mimogames
