/* montecarlo.hpp
 *
 * Trial orchestration: draw scenarios, solve the selected games on each,
 * and aggregate per-cell averages of utility, power, and SINR. A cell is
 * one (game, K, n_rx) triple. Trial t always uses RNG stream t from the
 * base seed, and every game kind sees the same scenario on the same trial,
 * so cross-game comparisons are paired. Aggregation reduces per-trial slots
 * in trial order, which makes summaries independent of the thread count.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mimogames/games.hpp"

namespace mimogames {

// Optional replacements for single fields of the reference configuration.
// When packet_len changes and info_len is not given, info_len follows it
// (zero-overhead default); the target SINR is always re-solved.
struct ParamOverrides {
    std::optional<int> n_tx;
    std::optional<int> packet_len;
    std::optional<int> info_len;
    std::optional<double> rate;      // bits/s
    std::optional<double> noise_psd; // W/Hz
    std::optional<double> p_max;     // watts
};

SystemParams resolve_params(const ParamOverrides& overrides, int n_users, int n_rx);

struct SweepSpec {
    std::vector<GameKind> kinds = {GameKind::mf_power, GameKind::mmse_power,
                                   GameKind::mmse_beam_power, GameKind::sic_power};
    std::vector<int> k_values = {2, 4, 6, 8, 10};
    std::vector<int> nrx_values = {4, 8};
    int trials = 100;
    std::uint64_t base_seed = 0;
    ParamOverrides overrides;
    ChannelModel channel_model = ChannelModel::rayleigh_entries;
    Placement placement;
    SolveOptions solve;
    int threads = 1;
};

void validate(const SweepSpec& spec);

struct CellStats {
    GameKind kind = GameKind::mf_power;
    int n_users = 0;
    int n_rx = 0;
    int trials = 0;            // attempted
    int converged_trials = 0;  // included in the means
    int error_trials = 0;      // threw; counted as non-converged
    double convergence_rate = 0.0;
    // Means pool per-user values over users and converged trials; standard
    // errors come from the spread of per-trial means (trials independent,
    // users within a trial are not).
    double mean_utility = 0.0;  // bits/joule
    double mean_power_w = 0.0;
    double mean_sinr = 0.0;
    double se_utility = 0.0;
    double se_power = 0.0;
    double se_sinr = 0.0;
    std::string first_error;  // earliest trial's message, empty if none
};

struct SweepSummary {
    std::vector<CellStats> cells;  // kind-major, then K, then n_rx, in spec order
};

// Called once per solved game. With threads == 1, calls arrive in trial
// order, kinds in spec order within a trial; with more threads the order is
// unspecified (calls are serialized, the run's results are unaffected).
using TrialObserver = std::function<void(const SystemParams&, const Scenario&, GameKind,
                                         const EquilibriumReport&, int trial_index)>;

SweepSummary run_sweep(const SweepSpec& spec, const TrialObserver& observer = {});

const CellStats* find_cell(const SweepSummary& summary, GameKind kind, int n_users, int n_rx);

// mean-utility ratio between two cells at the same (K, n_rx)
double paired_ratio(const SweepSummary& summary, GameKind kind_a, GameKind kind_b, int n_users,
                    int n_rx);

}  // namespace mimogames
