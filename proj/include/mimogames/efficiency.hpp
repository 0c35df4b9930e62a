/* efficiency.hpp
 *
 * The packet-success efficiency function f(g) = (1 - e^-g)^M, its
 * derivative, the target-SINR root of f(g) = g f'(g), and the bits-per-joule
 * utility. All pure functions of scalars; evaluation is in log space so
 * large M does not underflow near g = 0.
 */
#pragma once

#include <stdexcept>

namespace mimogames {

// f(g) = (1 - e^-g)^M, in [0, 1]. Requires g >= 0, M >= 1.
double eff(double gamma, int packet_len);

// f'(g) = M e^-g (1 - e^-g)^(M-1). Requires g >= 0, M >= 1.
double eff_prime(double gamma, int packet_len);

// Unique positive root of f(g) = g f'(g), equivalently e^g = 1 + M g.
// Requires M >= 2: for M = 1 the only solution is g = 0, so there is no
// positive target and the call is rejected.
double solve_target_sinr(int packet_len);

// Utility in bits per joule: rate * (L/M) * f(g) / p. The p = 0 limit is 0.
// Requires p >= 0; negative p is an error.
double utility(double gamma, double p, double rate, int info_len, int packet_len);

}  // namespace mimogames
