#include "mimogames/efficiency.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mimogames {

namespace {

void check_gamma(double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("efficiency: sinr must be nonnegative");
}

void check_packet_len(int m) {
    if (m < 1) throw std::invalid_argument("efficiency: packet length must be >= 1");
}

}  // namespace

double eff(double gamma, int packet_len) {
    check_gamma(gamma);
    check_packet_len(packet_len);
    if (gamma == 0.0) return 0.0;
    // (1 - e^-g)^M = exp(M log1p(-e^-g)); exact 0 on underflow is correct.
    const double base = std::log1p(-std::exp(-gamma));
    return std::exp(packet_len * base);
}

double eff_prime(double gamma, int packet_len) {
    check_gamma(gamma);
    check_packet_len(packet_len);
    if (packet_len == 1) return std::exp(-gamma);
    if (gamma == 0.0) return 0.0;
    const double base = std::log1p(-std::exp(-gamma));
    return packet_len * std::exp(-gamma + (packet_len - 1) * base);
}

double solve_target_sinr(int packet_len) {
    if (packet_len < 2)
        throw std::invalid_argument(
            "solve_target_sinr: packet length must be >= 2; for M = 1 the equation "
            "f(g) = g f'(g) has no positive root (e^g = 1 + g only at g = 0)");
    const double m = packet_len;
    // h(g) = e^g - 1 - M g: negative at the left bracket, positive at the right.
    auto h = [m](double g) { return std::expm1(g) - m * g; };
    double lo = 1e-6;
    double hi = 10.0 + 2.0 * std::log(m);
    if (!(h(lo) < 0.0 && h(hi) > 0.0))
        throw std::logic_error("solve_target_sinr: bracket failed");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // bracket at machine resolution
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double utility(double gamma, double p, double rate, int info_len, int packet_len) {
    if (!(p >= 0.0)) throw std::domain_error("utility: power must be nonnegative");
    if (info_len < 1 || info_len > packet_len)
        throw std::invalid_argument("utility: need 1 <= info_len <= packet_len");
    if (p == 0.0) return 0.0;  // f(g) = o(g) makes the p -> 0 limit vanish
    return rate * (static_cast<double>(info_len) / packet_len) * eff(gamma, packet_len) / p;
}

}  // namespace mimogames
