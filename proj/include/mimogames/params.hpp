/* params.hpp
 *
 * Global system constants for one experiment cell: antenna counts, noise
 * level, rate, packet length, power cap, and the target SINR. The target is
 * always solved from the packet length, never set by hand; validate() checks
 * that tie along with the range invariants.
 */
#pragma once

#include <vector>

#include "mimogames/efficiency.hpp"

namespace mimogames {

struct SystemParams {
    int n_users = 1;            // K
    int n_tx = 4;               // transmit antennas per user
    int n_rx = 4;               // receive antennas at the AP
    double noise_psd = 1e-9;    // W/Hz
    double rate = 1e5;          // bits/s, common to all users
    int packet_len = 120;       // symbols per packet
    int info_len = 120;         // information symbols per packet
    double p_max = 0.0;         // common transmit power cap, watts
    std::vector<double> p_max_per_user;  // optional per-user caps; empty = common
    double target_sinr = 0.0;   // solution of f(g) = g f'(g) for packet_len

    // cap for user k, honoring per-user overrides
    double p_cap(int k) const {
        return p_max_per_user.empty() ? p_max : p_max_per_user[static_cast<std::size_t>(k)];
    }
};

// Throws std::invalid_argument when a field is out of range, info_len >
// packet_len, per-user cap list has the wrong length, or target_sinr does
// not satisfy |f(g) - g f'(g)| <= 1e-9.
void validate(const SystemParams& params);

// The reference experiment configuration for a (K, n_rx) cell: 4 transmit
// antennas, packet length 120 with zero overhead, 100 kbps, noise level
// 1e-9 W/Hz, -25 dBW power cap, target SINR solved at construction.
SystemParams default_params(int n_users, int n_rx);

// bits/joule at this cell's rate and frame overhead
double utility(double gamma, double p, const SystemParams& params);

}  // namespace mimogames
