/* games.hpp
 *
 * Best-response dynamics to Nash equilibrium for the four energy-efficiency
 * games: power control under a fixed matched filter, under per-round MMSE
 * filters, jointly with transmit beamforming, and under SIC-MMSE reception.
 * All variants run the standard power iteration p <- min(cap, p * g_target/g)
 * [a standard interference function, so convergence from any positive start],
 * differing only in how filters (and beamformers) are refreshed between
 * rounds. Power updates are synchronous, so trajectories do not depend on
 * user ordering.
 */
#pragma once

#include <string>
#include <vector>

#include "mimogames/receivers.hpp"

namespace mimogames {

enum class GameKind { mf_power, mmse_power, mmse_beam_power, sic_power };

const char* game_kind_name(GameKind kind);
GameKind game_kind_from_name(const std::string& name);

struct SolveOptions {
    double power_tol = 1e-6;     // max relative power change per round
    int max_power_rounds = 1000;
    int max_outer_rounds = 50;   // joint beam+power game only
    double beam_tol = 1e-8;      // beamformer sweep change threshold
    int max_beam_sweeps = 200;
    double p0_fraction = 0.01;   // cold start at this fraction of each cap
};

struct EquilibriumReport {
    GameKind kind = GameKind::mf_power;
    AllocationState state;
    std::vector<double> sinr;     // per user, explicit quotient at the final state
    std::vector<double> utility;  // per user, bits/joule
    bool converged = false;
    int outer_iterations = 0;     // power rounds; outer rounds for the joint game
    int total_power_rounds = 0;
    double power_residual = 0.0;  // last round's max relative power change
    // Joint game only: sum capacity around each beamformer sweep, one
    // segment per outer round holding [before sweep, after sweep] at that
    // round's powers. Each segment is non-decreasing (powers are fixed
    // within a sweep); values may drop between segments because a power
    // round separates them.
    std::vector<std::vector<double>> capacity_trace;
};

// min(cap, p_k * target/g_k) with g_k evaluated at the state's current
// filter. Requires positive current power and a nonzero effective signature.
double power_best_response(const SystemParams& params, const Scenario& scenario,
                           const AllocationState& state, int k, double target_sinr, double p_cap);

// C = 1/2 (log det M - n_rx log(N0/2)), M the data covariance of state.
double sum_capacity(const SystemParams& params, const Scenario& scenario,
                    const AllocationState& state);

// Dominant eigenvector of H_k^T M_k^{-1} H_k, the SINR-maximizing beamformer
// against the other users' current strategies.
Vector beamformer_best_response(const SystemParams& params, const Scenario& scenario,
                                const AllocationState& state, int k);

EquilibriumReport solve_game(const Scenario& scenario, const SystemParams& params, GameKind kind,
                             const SolveOptions& options = {});

struct NashCheck {
    bool is_nash = false;
    double worst_gain = 0.0;   // best relative utility gain found over all deviations
    int worst_user = -1;
    double worst_power = 0.0;  // deviation power achieving worst_gain
};

// Scans unilateral power deviations p_k (1 +- delta), clipped to [0, cap]
// (only downward once pinned at the cap), re-deriving the deviating user's
// own filter for the receiver-adaptive games. Nash iff no deviation gains
// more than 1e-6 relative utility.
NashCheck verify_nash(const Scenario& scenario, const SystemParams& params,
                      const EquilibriumReport& report,
                      const std::vector<double>& deviation_fractions = {0.01, 0.05, 0.10});

}  // namespace mimogames
