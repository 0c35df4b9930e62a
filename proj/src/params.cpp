#include "mimogames/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mimogames {

void validate(const SystemParams& params) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("params: " + msg); };
    if (params.n_users < 1) fail("n_users must be >= 1");
    if (params.n_tx < 1) fail("n_tx must be >= 1");
    if (params.n_rx < 1) fail("n_rx must be >= 1");
    if (!(params.noise_psd > 0.0)) fail("noise_psd must be positive");
    if (!(params.rate > 0.0)) fail("rate must be positive");
    if (params.packet_len < 2) fail("packet_len must be >= 2");
    if (params.info_len < 1) fail("info_len must be >= 1");
    if (params.info_len > params.packet_len) fail("info_len must not exceed packet_len");
    if (!(params.p_max > 0.0)) fail("p_max must be positive");
    if (!params.p_max_per_user.empty()) {
        if (static_cast<int>(params.p_max_per_user.size()) != params.n_users)
            fail("p_max_per_user must have one entry per user");
        for (double cap : params.p_max_per_user)
            if (!(cap > 0.0)) fail("per-user power caps must be positive");
    }
    if (!(params.target_sinr > 0.0)) fail("target_sinr must be positive");
    const double residual = eff(params.target_sinr, params.packet_len) -
                            params.target_sinr * eff_prime(params.target_sinr, params.packet_len);
    if (!(std::fabs(residual) <= 1e-9))
        fail("target_sinr does not solve f(g) = g f'(g) for this packet_len");
}

SystemParams default_params(int n_users, int n_rx) {
    SystemParams p;
    p.n_users = n_users;
    p.n_tx = 4;
    p.n_rx = n_rx;
    p.noise_psd = 1e-9;
    p.rate = 1e5;
    p.packet_len = 120;
    p.info_len = 120;
    p.p_max = std::pow(10.0, -25.0 / 10.0);  // -25 dBW
    p.target_sinr = solve_target_sinr(p.packet_len);
    validate(p);
    return p;
}

double utility(double gamma, double p, const SystemParams& params) {
    return utility(gamma, p, params.rate, params.info_len, params.packet_len);
}

}  // namespace mimogames
