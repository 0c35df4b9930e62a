/* receivers.hpp
 *
 * Receive filters and SINR for the three uplink processing modes: matched
 * filter, linear MMSE, and MMSE with successive interference cancellation.
 * SINR is always the explicit quotient
 *
 *   g_k = p_k (d^T h_k)^2 / ((N0/2) ||d||^2 + sum_{i in I_k} p_i (d^T h_i)^2),
 *
 * with h_i = H_i a_i the effective signatures; closed forms are provided as
 * cross-checks. Under SIC the interference set I_k is only the users after
 * k in the cancellation order (earlier users are already subtracted), and
 * the order sorts ||H_k a_k|| non-increasing.
 */
#pragma once

#include <vector>

#include "mimogames/linalg.hpp"
#include "mimogames/params.hpp"
#include "mimogames/scenario.hpp"

namespace mimogames {

enum class ReceiverKind { matched, mmse, sic_mmse };

// Cancellation order: permutation[0] is detected first. Valid orders sort
// effective signature norms non-increasing, ties broken by ascending index.
struct SicOrder {
    std::vector<int> permutation;
};

// Per-user strategies plus the receiver mode. Filters are stored
// unnormalized as produced; every consumer is scale-invariant. `sic` is
// meaningful only when receiver_kind == sic_mmse and must then hold a full
// permutation of the users.
struct AllocationState {
    std::vector<double> powers;       // watts, in [0, cap]
    std::vector<Vector> beamformers;  // unit norm, n_tx each
    std::vector<Vector> filters;      // n_rx each
    ReceiverKind receiver_kind = ReceiverKind::matched;
    SicOrder sic;
};

// h_k = H a: the receive-side footprint of one user.
Vector effective_signature(const Matrix& h, const Vector& a);

// Data covariance M = sum_k p_k h_k h_k^T + (N0/2) I.
Matrix covariance(const SystemParams& params, const Scenario& scenario,
                  const AllocationState& state);

// M with user k's own term left out (M_k >= (N0/2) I, always SPD).
Matrix covariance_excluding(const SystemParams& params, const Scenario& scenario,
                            const AllocationState& state, int k);

// d = H a exactly.
Vector matched_filter(const Matrix& h, const Vector& a);

// d = sqrt(p_k) M^{-1} h_k; any positive rescaling gives the same SINR.
Vector mmse_filter(const SystemParams& params, const Scenario& scenario,
                   const AllocationState& state, int k);

// Explicit-quotient SINR of user k under state.filters[k]. Throws on a zero
// filter.
double sinr(const SystemParams& params, const Scenario& scenario, const AllocationState& state,
            int k);

// g_k = p_k h_k^T M_k^{-1} h_k; equals sinr() at the MMSE filter.
double mmse_sinr_closed_form(const SystemParams& params, const Scenario& scenario,
                             const AllocationState& state, int k);

// Sort users by non-increasing ||H_k a_k||, stable in the original index.
SicOrder sic_order(const Scenario& scenario, const AllocationState& state);

// d = sqrt(p_k) (sum_{j at or after k in order} p_j h_j h_j^T + (N0/2) I)^{-1} h_k:
// the MMSE filter against the not-yet-cancelled users only.
Vector sic_filter(const SystemParams& params, const Scenario& scenario,
                  const AllocationState& state, const SicOrder& order, int k);

}  // namespace mimogames
