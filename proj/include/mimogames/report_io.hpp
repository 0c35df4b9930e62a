/* report_io.hpp
 *
 * Writers for sweep results: the CSV table (primary interchange, one row
 * per (game, K, n_rx) cell), a JSON mirror of the same numbers, a metadata
 * file sufficient to re-run the sweep, and the detailed single-scenario
 * report. Floating point is emitted with 17 significant digits everywhere,
 * so files are byte-stable across runs and parse back to the exact doubles.
 */
#pragma once

#include <string>

#include "mimogames/config.hpp"
#include "mimogames/montecarlo.hpp"

namespace mimogames {

inline constexpr const char* kCsvHeader =
    "game,K,n_rx,mean_utility_bits_per_joule,mean_power_w,mean_power_dbw,mean_sinr,mean_sinr_db,"
    "convergence_rate,trials,se_utility,se_power,se_sinr";

std::string csv_string(const SweepSummary& summary);

std::string summary_json_string(const SweepSummary& summary);

// version, RNG algorithm, the canonical config (enough to re-run), pooling
// and cold-start notes, per-cell non-convergence counts, timings, SIMD lane
std::string metadata_json_string(const RunConfig& config, const SweepSummary& summary,
                                 double wall_seconds);

void write_text_file(const std::string& path, const std::string& content);

// Writes results.csv / results.json per config formats plus metadata.json
// into config.out_dir (created if missing). Returns the paths written.
std::vector<std::string> write_run_outputs(const RunConfig& config, const SweepSummary& summary,
                                           double wall_seconds);

// Single-scenario inspection report: per-user powers, SINRs, utilities,
// filters and beamformers, the capacity trace, and the deviation-scan
// verdict, for every requested game kind on one shared scenario.
std::string single_report_json_string(const RunConfig& config);

}  // namespace mimogames
