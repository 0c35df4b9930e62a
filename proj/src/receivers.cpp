#include "mimogames/receivers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mimogames/kernels.hpp"

namespace mimogames {

namespace {

void check_user(const AllocationState& state, int k) {
    if (k < 0 || k >= static_cast<int>(state.powers.size()))
        throw std::out_of_range("receivers: user index out of range");
}

int order_position(const SicOrder& order, int k) {
    for (std::size_t pos = 0; pos < order.permutation.size(); ++pos)
        if (order.permutation[pos] == k) return static_cast<int>(pos);
    throw std::invalid_argument("receivers: user missing from cancellation order");
}

}  // namespace

Vector effective_signature(const Matrix& h, const Vector& a) { return matvec(h, a); }

Vector matched_filter(const Matrix& h, const Vector& a) { return matvec(h, a); }

Matrix covariance(const SystemParams& params, const Scenario& scenario,
                  const AllocationState& state) {
    const int k_users = static_cast<int>(state.powers.size());
    Matrix m(params.n_rx, params.n_rx);
    for (int i = 0; i < params.n_rx; ++i) m(i, i) = 0.5 * params.noise_psd;
    for (int k = 0; k < k_users; ++k) {
        if (state.powers[static_cast<std::size_t>(k)] == 0.0) continue;
        const Vector hk = effective_signature(scenario.channels[static_cast<std::size_t>(k)],
                                              state.beamformers[static_cast<std::size_t>(k)]);
        add_outer(m, state.powers[static_cast<std::size_t>(k)], hk);
    }
    return m;
}

Matrix covariance_excluding(const SystemParams& params, const Scenario& scenario,
                            const AllocationState& state, int k) {
    check_user(state, k);
    const int k_users = static_cast<int>(state.powers.size());
    Matrix m(params.n_rx, params.n_rx);
    for (int i = 0; i < params.n_rx; ++i) m(i, i) = 0.5 * params.noise_psd;
    for (int j = 0; j < k_users; ++j) {
        if (j == k || state.powers[static_cast<std::size_t>(j)] == 0.0) continue;
        const Vector hj = effective_signature(scenario.channels[static_cast<std::size_t>(j)],
                                              state.beamformers[static_cast<std::size_t>(j)]);
        add_outer(m, state.powers[static_cast<std::size_t>(j)], hj);
    }
    return m;
}

Vector mmse_filter(const SystemParams& params, const Scenario& scenario,
                   const AllocationState& state, int k) {
    check_user(state, k);
    const Vector hk = effective_signature(scenario.channels[static_cast<std::size_t>(k)],
                                          state.beamformers[static_cast<std::size_t>(k)]);
    Vector d = spd_solve(covariance(params, scenario, state), hk);
    const double scale = std::sqrt(state.powers[static_cast<std::size_t>(k)]);
    kernels::scal(scale, d.data(), d.size());
    return d;
}

double sinr(const SystemParams& params, const Scenario& scenario, const AllocationState& state,
            int k) {
    check_user(state, k);
    const Vector& d = state.filters[static_cast<std::size_t>(k)];
    const double d_norm2 = dot(d, d);
    if (!(d_norm2 > 0.0)) throw std::domain_error("sinr: zero receive filter");

    const int k_users = static_cast<int>(state.powers.size());
    int first_interferer_pos = -1;  // SIC: interference starts after k's slot
    if (state.receiver_kind == ReceiverKind::sic_mmse)
        first_interferer_pos = order_position(state.sic, k);

    double numerator = 0.0;
    double interference = 0.0;
    if (state.receiver_kind == ReceiverKind::sic_mmse) {
        for (int pos = first_interferer_pos; pos < k_users; ++pos) {
            const int i = state.sic.permutation[static_cast<std::size_t>(pos)];
            const Vector hi = effective_signature(scenario.channels[static_cast<std::size_t>(i)],
                                                  state.beamformers[static_cast<std::size_t>(i)]);
            const double c = dot(d, hi);
            const double term = state.powers[static_cast<std::size_t>(i)] * c * c;
            if (i == k)
                numerator = term;
            else
                interference += term;
        }
    } else {
        for (int i = 0; i < k_users; ++i) {
            const Vector hi = effective_signature(scenario.channels[static_cast<std::size_t>(i)],
                                                  state.beamformers[static_cast<std::size_t>(i)]);
            const double c = dot(d, hi);
            const double term = state.powers[static_cast<std::size_t>(i)] * c * c;
            if (i == k)
                numerator = term;
            else
                interference += term;
        }
    }
    const double noise = 0.5 * params.noise_psd * d_norm2;
    return numerator / (noise + interference);
}

double mmse_sinr_closed_form(const SystemParams& params, const Scenario& scenario,
                             const AllocationState& state, int k) {
    check_user(state, k);
    const Vector hk = effective_signature(scenario.channels[static_cast<std::size_t>(k)],
                                          state.beamformers[static_cast<std::size_t>(k)]);
    const Matrix mk = covariance_excluding(params, scenario, state, k);
    return state.powers[static_cast<std::size_t>(k)] * dot(hk, spd_solve(mk, hk));
}

SicOrder sic_order(const Scenario& scenario, const AllocationState& state) {
    const int k_users = static_cast<int>(state.powers.size());
    std::vector<double> norms(static_cast<std::size_t>(k_users));
    for (int k = 0; k < k_users; ++k)
        norms[static_cast<std::size_t>(k)] =
            norm(effective_signature(scenario.channels[static_cast<std::size_t>(k)],
                                     state.beamformers[static_cast<std::size_t>(k)]));
    SicOrder order;
    order.permutation.resize(static_cast<std::size_t>(k_users));
    std::iota(order.permutation.begin(), order.permutation.end(), 0);
    std::stable_sort(order.permutation.begin(), order.permutation.end(), [&](int i, int j) {
        return norms[static_cast<std::size_t>(i)] > norms[static_cast<std::size_t>(j)];
    });
    return order;
}

Vector sic_filter(const SystemParams& params, const Scenario& scenario,
                  const AllocationState& state, const SicOrder& order, int k) {
    check_user(state, k);
    const int k_users = static_cast<int>(state.powers.size());
    const int pos_k = order_position(order, k);

    Matrix m(params.n_rx, params.n_rx);
    for (int i = 0; i < params.n_rx; ++i) m(i, i) = 0.5 * params.noise_psd;
    for (int pos = pos_k; pos < k_users; ++pos) {
        const int j = order.permutation[static_cast<std::size_t>(pos)];
        if (state.powers[static_cast<std::size_t>(j)] == 0.0) continue;
        const Vector hj = effective_signature(scenario.channels[static_cast<std::size_t>(j)],
                                              state.beamformers[static_cast<std::size_t>(j)]);
        add_outer(m, state.powers[static_cast<std::size_t>(j)], hj);
    }

    const Vector hk = effective_signature(scenario.channels[static_cast<std::size_t>(k)],
                                          state.beamformers[static_cast<std::size_t>(k)]);
    Vector d = spd_solve(m, hk);
    const double scale = std::sqrt(state.powers[static_cast<std::size_t>(k)]);
    kernels::scal(scale, d.data(), d.size());
    return d;
}

}  // namespace mimogames
