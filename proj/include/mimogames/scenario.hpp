/* scenario.hpp
 *
 * One random network realization: per-user distances from the access point
 * and the per-user channel matrices, plus the seed record that produced
 * them. Also the common beamformer initializer (dominant eigenvector of
 * H^T H).
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimogames/linalg.hpp"
#include "mimogames/params.hpp"
#include "mimogames/rng.hpp"

namespace mimogames {

// How channel entries are drawn. The reference model uses nonnegative
// Rayleigh entries with mean 1/d; the Gaussian variant (zero mean, standard
// deviation 1/d) exists for sensitivity studies.
enum class ChannelModel { rayleigh_entries, gaussian_entries };

const char* channel_model_name(ChannelModel model);
ChannelModel channel_model_from_name(const std::string& name);

// User placement: distances drawn uniformly in [d_min, d_max] meters, or a
// fixed list (one entry per user, each within [d_min, d_max]).
struct Placement {
    double d_min = 10.0;
    double d_max = 1000.0;
    std::vector<double> fixed;  // empty = uniform draw
};

struct Scenario {
    std::vector<double> distances;  // meters, one per user
    std::vector<Matrix> channels;   // n_rx x n_tx, one per user
    std::uint64_t seed = 0;         // RNG seed that produced this realization
    std::uint64_t stream = 0;
    std::string rng_algorithm;
};

// Draws distances (all users first), then each user's channel entries in
// row-major order, so the realization is a pure function of
// (params, placement, model, seed, stream).
Scenario sample_scenario(const SystemParams& params, const Placement& placement,
                         ChannelModel model, Rng& rng);

// Unit-norm dominant eigenvector of H^T H, sign-normalized.
Vector initial_beamformer(const Matrix& h);

}  // namespace mimogames
