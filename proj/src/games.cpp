#include "mimogames/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mimogames/kernels.hpp"

namespace mimogames {

const char* game_kind_name(GameKind kind) {
    switch (kind) {
        case GameKind::mf_power: return "mf_power";
        case GameKind::mmse_power: return "mmse_power";
        case GameKind::mmse_beam_power: return "mmse_beam_power";
        case GameKind::sic_power: return "sic_power";
    }
    throw std::logic_error("game_kind_name: bad enum");
}

GameKind game_kind_from_name(const std::string& name) {
    if (name == "mf_power") return GameKind::mf_power;
    if (name == "mmse_power") return GameKind::mmse_power;
    if (name == "mmse_beam_power") return GameKind::mmse_beam_power;
    if (name == "sic_power") return GameKind::sic_power;
    throw std::invalid_argument("unknown game kind: " + name);
}

namespace {

void check_options(const SolveOptions& opt) {
    if (!(opt.power_tol > 0.0) || !(opt.beam_tol > 0.0))
        throw std::invalid_argument("solve options: tolerances must be positive");
    if (opt.max_power_rounds < 1 || opt.max_outer_rounds < 1 || opt.max_beam_sweeps < 1)
        throw std::invalid_argument("solve options: iteration caps must be >= 1");
    if (!(opt.p0_fraction > 0.0 && opt.p0_fraction <= 1.0))
        throw std::invalid_argument("solve options: p0_fraction must be in (0, 1]");
}

void check_scenario(const SystemParams& params, const Scenario& scenario) {
    if (static_cast<int>(scenario.channels.size()) != params.n_users ||
        static_cast<int>(scenario.distances.size()) != params.n_users)
        throw std::invalid_argument("solve_game: scenario size does not match n_users");
    for (const Matrix& h : scenario.channels)
        if (h.rows != params.n_rx || h.cols != params.n_tx)
            throw std::invalid_argument("solve_game: channel dimensions do not match params");
}

// Per-solve scratch: cached effective signatures and the covariance buffer,
// so power rounds allocate nothing beyond one Cholesky factor.
struct Workspace {
    int k_users = 0;
    int n_rx = 0;
    double noise_half = 0.0;
    std::vector<Vector> sig;
    Matrix cov;
    std::vector<double> gamma;
    std::vector<int> pos_of;  // inverse of the SIC permutation

    Workspace(const SystemParams& params)
        : k_users(params.n_users),
          n_rx(params.n_rx),
          noise_half(0.5 * params.noise_psd),
          sig(static_cast<std::size_t>(params.n_users)),
          cov(params.n_rx, params.n_rx),
          gamma(static_cast<std::size_t>(params.n_users), 0.0) {}
};

void refresh_signature(const Scenario& scenario, const AllocationState& state, int k,
                       Workspace& ws) {
    const Matrix& h = scenario.channels[static_cast<std::size_t>(k)];
    Vector& s = ws.sig[static_cast<std::size_t>(k)];
    s.resize(static_cast<std::size_t>(h.rows));
    kernels::matvec(h.a.data(), h.rows, h.cols,
                    state.beamformers[static_cast<std::size_t>(k)].data(), s.data());
}

void build_cov(const AllocationState& state, Workspace& ws, int exclude = -1) {
    std::fill(ws.cov.a.begin(), ws.cov.a.end(), 0.0);
    for (int i = 0; i < ws.n_rx; ++i) ws.cov(i, i) = ws.noise_half;
    for (int k = 0; k < ws.k_users; ++k) {
        const double p = state.powers[static_cast<std::size_t>(k)];
        if (k == exclude || p == 0.0) continue;
        kernels::syr(p, ws.sig[static_cast<std::size_t>(k)].data(),
                     static_cast<std::size_t>(ws.n_rx), ws.cov.a.data());
    }
}

void mmse_filters_round(AllocationState& state, Workspace& ws) {
    build_cov(state, ws);
    const CholeskyFactor chol(ws.cov);
    for (int k = 0; k < ws.k_users; ++k) {
        Vector& d = state.filters[static_cast<std::size_t>(k)];
        d = ws.sig[static_cast<std::size_t>(k)];
        chol.solve_in_place(d.data());
        kernels::scal(std::sqrt(state.powers[static_cast<std::size_t>(k)]), d.data(), d.size());
    }
}

void sic_filters_round(AllocationState& state, Workspace& ws) {
    // Walk the cancellation order backwards, growing the covariance of the
    // not-yet-cancelled set as we go.
    std::fill(ws.cov.a.begin(), ws.cov.a.end(), 0.0);
    for (int i = 0; i < ws.n_rx; ++i) ws.cov(i, i) = ws.noise_half;
    for (int pos = ws.k_users - 1; pos >= 0; --pos) {
        const int j = state.sic.permutation[static_cast<std::size_t>(pos)];
        const double p = state.powers[static_cast<std::size_t>(j)];
        if (p != 0.0)
            kernels::syr(p, ws.sig[static_cast<std::size_t>(j)].data(),
                         static_cast<std::size_t>(ws.n_rx), ws.cov.a.data());
        const CholeskyFactor chol(ws.cov);
        Vector& d = state.filters[static_cast<std::size_t>(j)];
        d = ws.sig[static_cast<std::size_t>(j)];
        chol.solve_in_place(d.data());
        kernels::scal(std::sqrt(p), d.data(), d.size());
    }
}

void compute_sinrs(const AllocationState& state, Workspace& ws) {
    for (int k = 0; k < ws.k_users; ++k) {
        const Vector& d = state.filters[static_cast<std::size_t>(k)];
        const double dn2 = kernels::dot(d.data(), d.data(), d.size());
        if (!(dn2 > 0.0))
            throw std::domain_error("solve_game: degenerate channel (zero receive filter)");
        double numerator = 0.0;
        double interference = 0.0;
        auto accumulate = [&](int i) {
            const double c =
                kernels::dot(d.data(), ws.sig[static_cast<std::size_t>(i)].data(), d.size());
            const double term = state.powers[static_cast<std::size_t>(i)] * c * c;
            if (i == k)
                numerator = term;
            else
                interference += term;
        };
        if (state.receiver_kind == ReceiverKind::sic_mmse) {
            for (int pos = ws.pos_of[static_cast<std::size_t>(k)]; pos < ws.k_users; ++pos)
                accumulate(state.sic.permutation[static_cast<std::size_t>(pos)]);
        } else {
            for (int i = 0; i < ws.k_users; ++i) accumulate(i);
        }
        ws.gamma[static_cast<std::size_t>(k)] = numerator / (ws.noise_half * dn2 + interference);
    }
}

// One synchronous target-SINR power round. step < 1 applies the update
// relaxed as (target/sinr)^step; the fixed points (sinr at target, or power
// pinned at the cap) are the same for every step in (0, 1].
double power_update(const SystemParams& params, AllocationState& state, const Workspace& ws,
                    double step = 1.0) {
    double residual = 0.0;
    for (int k = 0; k < ws.k_users; ++k) {
        const double g = ws.gamma[static_cast<std::size_t>(k)];
        if (!(g > 0.0))
            throw std::domain_error("solve_game: degenerate channel (zero SINR at positive power)");
        double& p = state.powers[static_cast<std::size_t>(k)];
        const double ratio = params.target_sinr / g;
        const double p_new =
            std::min(params.p_cap(k), p * (step == 1.0 ? ratio : std::pow(ratio, step)));
        residual = std::max(residual, std::fabs(p_new - p) / std::max(p, 1e-12));
        p = p_new;
    }
    return residual;
}

// distance between unit vectors up to sign
double beam_change(const Vector& a, const Vector& b) {
    double minus = 0.0, plus = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dm = a[i] - b[i];
        const double dp = a[i] + b[i];
        minus += dm * dm;
        plus += dp * dp;
    }
    return std::sqrt(std::min(minus, plus));
}

// Move from the unit vector a part way toward the unit vector b (sign-aligned
// with a) and renormalize. The result lies on the arc from a to b; when b is
// the dominant eigenvector of the SINR form, the form is non-decreasing along
// that whole arc, so a partial step never lowers the user's own SINR.
void damped_beam_step(const Vector& a, double step, Vector& b) {
    double align = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) align += a[i] * b[i];
    const double s = align < 0.0 ? -1.0 : 1.0;
    double n2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        b[i] = a[i] + step * (s * b[i] - a[i]);
        n2 += b[i] * b[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : b) v *= inv;
}

struct PowerPhaseResult {
    int rounds = 0;
    double residual = 0.0;
    bool converged = false;
};

template <typename FilterRound>
PowerPhaseResult run_power_phase(const SystemParams& params, AllocationState& state, Workspace& ws,
                                 const SolveOptions& opt, FilterRound&& filter_round) {
    PowerPhaseResult r;
    for (int round = 0; round < opt.max_power_rounds; ++round) {
        filter_round();
        compute_sinrs(state, ws);
        r.residual = power_update(params, state, ws);
        r.rounds = round + 1;
        if (r.residual < opt.power_tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

}  // namespace

double power_best_response(const SystemParams& params, const Scenario& scenario,
                           const AllocationState& state, int k, double target_sinr, double p_cap) {
    const double p = state.powers[static_cast<std::size_t>(k)];
    const double g = sinr(params, scenario, state, k);
    if (!(g > 0.0)) {
        if (p > 0.0)
            throw std::domain_error(
                "power_best_response: degenerate channel (zero SINR at positive power)");
        throw std::invalid_argument("power_best_response: requires positive current power");
    }
    return std::min(p_cap, p * (target_sinr / g));
}

double sum_capacity(const SystemParams& params, const Scenario& scenario,
                    const AllocationState& state) {
    const Matrix m = covariance(params, scenario, state);
    return 0.5 * (log_det_spd(m) - params.n_rx * std::log(0.5 * params.noise_psd));
}

Vector beamformer_best_response(const SystemParams& params, const Scenario& scenario,
                                const AllocationState& state, int k) {
    const Matrix mk = covariance_excluding(params, scenario, state, k);
    const CholeskyFactor chol(mk);
    const Matrix& h = scenario.channels[static_cast<std::size_t>(k)];
    Matrix x(h.rows, h.cols);
    Vector col(static_cast<std::size_t>(h.rows));
    for (int j = 0; j < h.cols; ++j) {
        for (int i = 0; i < h.rows; ++i) col[static_cast<std::size_t>(i)] = h(i, j);
        chol.solve_in_place(col.data());
        for (int i = 0; i < h.rows; ++i) x(i, j) = col[static_cast<std::size_t>(i)];
    }
    Matrix b = matmul(transposed(h), x);  // H^T M_k^{-1} H, symmetric up to roundoff
    for (int i = 0; i < b.rows; ++i)
        for (int j = i + 1; j < b.cols; ++j) {
            const double v = 0.5 * (b(i, j) + b(j, i));
            b(i, j) = v;
            b(j, i) = v;
        }
    return dominant_eigenpair(b).vector;
}

EquilibriumReport solve_game(const Scenario& scenario, const SystemParams& params, GameKind kind,
                             const SolveOptions& options) {
    validate(params);
    check_scenario(params, scenario);
    check_options(options);
    const int k_users = params.n_users;

    EquilibriumReport report;
    report.kind = kind;
    AllocationState& state = report.state;
    state.receiver_kind = kind == GameKind::mf_power   ? ReceiverKind::matched
                          : kind == GameKind::sic_power ? ReceiverKind::sic_mmse
                                                        : ReceiverKind::mmse;
    state.powers.resize(static_cast<std::size_t>(k_users));
    state.beamformers.resize(static_cast<std::size_t>(k_users));
    state.filters.resize(static_cast<std::size_t>(k_users));
    for (int k = 0; k < k_users; ++k) {
        state.powers[static_cast<std::size_t>(k)] = options.p0_fraction * params.p_cap(k);
        state.beamformers[static_cast<std::size_t>(k)] =
            initial_beamformer(scenario.channels[static_cast<std::size_t>(k)]);
    }

    Workspace ws(params);
    for (int k = 0; k < k_users; ++k) refresh_signature(scenario, state, k, ws);

    if (kind == GameKind::mf_power) {
        for (int k = 0; k < k_users; ++k)
            state.filters[static_cast<std::size_t>(k)] = ws.sig[static_cast<std::size_t>(k)];
        const PowerPhaseResult phase = run_power_phase(params, state, ws, options, [] {});
        report.converged = phase.converged;
        report.outer_iterations = phase.rounds;
        report.total_power_rounds = phase.rounds;
        report.power_residual = phase.residual;
    } else if (kind == GameKind::mmse_power) {
        const PowerPhaseResult phase = run_power_phase(params, state, ws, options,
                                                       [&] { mmse_filters_round(state, ws); });
        mmse_filters_round(state, ws);  // align filters with the final powers
        report.converged = phase.converged;
        report.outer_iterations = phase.rounds;
        report.total_power_rounds = phase.rounds;
        report.power_residual = phase.residual;
    } else if (kind == GameKind::sic_power) {
        state.sic = sic_order(scenario, state);  // beamformers are fixed in this game
        ws.pos_of.assign(static_cast<std::size_t>(k_users), 0);
        for (int pos = 0; pos < k_users; ++pos)
            ws.pos_of[static_cast<std::size_t>(state.sic.permutation[static_cast<std::size_t>(pos)])] = pos;
        const PowerPhaseResult phase = run_power_phase(params, state, ws, options,
                                                       [&] { sic_filters_round(state, ws); });
        sic_filters_round(state, ws);
        report.converged = phase.converged;
        report.outer_iterations = phase.rounds;
        report.total_power_rounds = phase.rounds;
        report.power_residual = phase.residual;
    } else {  // mmse_beam_power
        // Joint schedule: each round runs one cyclic beamformer sweep at the
        // current powers, then one power round against refreshed MMSE
        // filters. Full alternating best responses overshoot and orbit when
        // several users contend for the same spatial directions, so both
        // updates take partial steps; partial steps leave the fixed points
        // of the exact best-response maps unchanged. The step size shrinks
        // on a fixed ladder so oscillators settle; a scenario still moving
        // at the round cap is reported non-converged.
        const long long round_cap =
            static_cast<long long>(options.max_outer_rounds) * options.max_beam_sweeps;
        bool outer_converged = false;
        for (long long round = 0; round < round_cap; ++round) {
            const double step = round * 10 < round_cap * 3   ? 0.25
                                : round * 10 < round_cap * 7 ? 0.1
                                                             : 0.05;
            // Beamformer sweep at fixed powers. Accepted updates cannot
            // lower the sum capacity; the guard only rejects eigensolver
            // noise, keeping every recorded segment monotone.
            std::vector<double> segment;
            double c_current = sum_capacity(params, scenario, state);
            segment.push_back(c_current);
            double sweep_change = 0.0;
            for (int k = 0; k < k_users; ++k) {
                Vector a_new = beamformer_best_response(params, scenario, state, k);
                Vector& a_k = state.beamformers[static_cast<std::size_t>(k)];
                damped_beam_step(a_k, step, a_new);
                const double change = beam_change(a_new, a_k);
                if (change == 0.0) continue;
                const Vector a_old = a_k;
                a_k = std::move(a_new);
                refresh_signature(scenario, state, k, ws);
                const double c_candidate = sum_capacity(params, scenario, state);
                if (c_candidate >= c_current - 1e-12 * std::max(1.0, std::fabs(c_current))) {
                    c_current = c_candidate;
                    sweep_change = std::max(sweep_change, change);
                } else {
                    a_k = a_old;
                    refresh_signature(scenario, state, k, ws);
                }
            }
            segment.push_back(c_current);
            report.capacity_trace.push_back(std::move(segment));

            mmse_filters_round(state, ws);
            compute_sinrs(state, ws);
            const double power_movement = power_update(params, state, ws, step);
            report.total_power_rounds += 1;
            report.power_residual = power_movement;
            report.outer_iterations = static_cast<int>(round + 1);
            if (std::max(sweep_change, power_movement) < options.power_tol) {
                outer_converged = true;
                break;
            }
        }
        mmse_filters_round(state, ws);  // align filters with the final powers
        report.converged = outer_converged;
    }

    report.sinr.resize(static_cast<std::size_t>(k_users));
    report.utility.resize(static_cast<std::size_t>(k_users));
    for (int k = 0; k < k_users; ++k) {
        const double g = sinr(params, scenario, state, k);
        report.sinr[static_cast<std::size_t>(k)] = g;
        report.utility[static_cast<std::size_t>(k)] =
            utility(g, state.powers[static_cast<std::size_t>(k)], params);
    }
    return report;
}

NashCheck verify_nash(const Scenario& scenario, const SystemParams& params,
                      const EquilibriumReport& report,
                      const std::vector<double>& deviation_fractions) {
    const int k_users = params.n_users;
    NashCheck check;
    check.worst_gain = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < k_users; ++k) {
        const double p_eq = report.state.powers[static_cast<std::size_t>(k)];
        const double cap = params.p_cap(k);
        const double u_eq = report.utility[static_cast<std::size_t>(k)];
        for (double delta : deviation_fractions) {
            for (double p_dev : {std::min(cap, p_eq * (1.0 + delta)), p_eq * (1.0 - delta)}) {
                if (p_dev == p_eq || p_dev <= 0.0) continue;
                AllocationState trial = report.state;
                trial.powers[static_cast<std::size_t>(k)] = p_dev;
                // The deviating user re-optimizes its own filter where the
                // game includes receiver choice; everyone else is frozen.
                if (report.kind == GameKind::mmse_power || report.kind == GameKind::mmse_beam_power)
                    trial.filters[static_cast<std::size_t>(k)] =
                        mmse_filter(params, scenario, trial, k);
                else if (report.kind == GameKind::sic_power)
                    trial.filters[static_cast<std::size_t>(k)] =
                        sic_filter(params, scenario, trial, trial.sic, k);
                const double g = sinr(params, scenario, trial, k);
                const double u = utility(g, p_dev, params);
                const double gain =
                    (u - u_eq) / std::max(u_eq, std::numeric_limits<double>::min());
                if (gain > check.worst_gain) {
                    check.worst_gain = gain;
                    check.worst_user = k;
                    check.worst_power = p_dev;
                }
            }
        }
    }
    if (check.worst_user < 0) check.worst_gain = 0.0;  // no feasible deviation existed
    check.is_nash = check.worst_gain <= 1e-6;
    return check;
}

}  // namespace mimogames
