#include "mimogames/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace mimogames {

const char* channel_model_name(ChannelModel model) {
    switch (model) {
        case ChannelModel::rayleigh_entries: return "rayleigh_entries";
        case ChannelModel::gaussian_entries: return "gaussian_entries";
    }
    throw std::logic_error("channel_model_name: bad enum");
}

ChannelModel channel_model_from_name(const std::string& name) {
    if (name == "rayleigh_entries") return ChannelModel::rayleigh_entries;
    if (name == "gaussian_entries") return ChannelModel::gaussian_entries;
    throw std::invalid_argument("unknown channel model: " + name);
}

Scenario sample_scenario(const SystemParams& params, const Placement& placement,
                         ChannelModel model, Rng& rng) {
    validate(params);
    if (!(placement.d_min > 0.0) || !(placement.d_max > placement.d_min))
        throw std::invalid_argument("placement: need 0 < d_min < d_max");

    const int k_users = params.n_users;
    Scenario s;
    s.seed = rng.seed();
    s.stream = rng.stream();
    s.rng_algorithm = kRngAlgorithm;

    s.distances.reserve(k_users);
    if (placement.fixed.empty()) {
        for (int k = 0; k < k_users; ++k)
            s.distances.push_back(rng.uniform(placement.d_min, placement.d_max));
    } else {
        if (static_cast<int>(placement.fixed.size()) != k_users)
            throw std::invalid_argument("placement: fixed distance list must have one entry per user");
        for (double d : placement.fixed) {
            if (!(d >= placement.d_min && d <= placement.d_max))
                throw std::invalid_argument("placement: fixed distance outside [d_min, d_max]");
            s.distances.push_back(d);
        }
    }

    // Rayleigh mean is sigma sqrt(pi/2); scale so entries average 1/d.
    constexpr double kSqrtHalfPi = 1.2533141373155002512078826424055;
    s.channels.reserve(k_users);
    for (int k = 0; k < k_users; ++k) {
        const double inv_d = 1.0 / s.distances[static_cast<std::size_t>(k)];
        Matrix h(params.n_rx, params.n_tx);
        if (model == ChannelModel::rayleigh_entries) {
            const double sigma = inv_d / kSqrtHalfPi;
            for (double& entry : h.a) entry = rng.rayleigh(sigma);
        } else {
            for (double& entry : h.a) entry = inv_d * rng.gaussian();
        }
        s.channels.push_back(std::move(h));
    }
    return s;
}

Vector initial_beamformer(const Matrix& h) {
    Matrix gram = matmul(transposed(h), h);
    // symmetrize away accumulation noise before the eigensolver
    for (int i = 0; i < gram.rows; ++i)
        for (int j = i + 1; j < gram.cols; ++j) {
            const double v = 0.5 * (gram(i, j) + gram(j, i));
            gram(i, j) = v;
            gram(j, i) = v;
        }
    return dominant_eigenpair(gram).vector;
}

}  // namespace mimogames
