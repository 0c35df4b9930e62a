#include "mimogames/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace mimogames {

SystemParams resolve_params(const ParamOverrides& overrides, int n_users, int n_rx) {
    SystemParams p = default_params(n_users, n_rx);
    if (overrides.n_tx) p.n_tx = *overrides.n_tx;
    if (overrides.packet_len) {
        p.packet_len = *overrides.packet_len;
        p.info_len = *overrides.packet_len;  // zero-overhead default tracks M
        p.target_sinr = solve_target_sinr(p.packet_len);
    }
    if (overrides.info_len) p.info_len = *overrides.info_len;
    if (overrides.rate) p.rate = *overrides.rate;
    if (overrides.noise_psd) p.noise_psd = *overrides.noise_psd;
    if (overrides.p_max) p.p_max = *overrides.p_max;
    validate(p);
    return p;
}

void validate(const SweepSpec& spec) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("sweep: " + msg); };
    if (spec.kinds.empty()) fail("at least one game kind required");
    if (spec.k_values.empty()) fail("at least one K value required");
    if (spec.nrx_values.empty()) fail("at least one n_rx value required");
    if (spec.trials < 1) fail("trials must be >= 1");
    if (spec.threads < 1) fail("threads must be >= 1");
    for (int k : spec.k_values)
        if (k < 1) fail("K values must be >= 1");
    for (int n : spec.nrx_values)
        if (n < 1) fail("n_rx values must be >= 1");
    auto has_dupes = [](auto v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) != v.end();
    };
    if (has_dupes(spec.k_values)) fail("duplicate K values");
    if (has_dupes(spec.nrx_values)) fail("duplicate n_rx values");
    std::vector<int> kind_tags;
    for (GameKind kind : spec.kinds) kind_tags.push_back(static_cast<int>(kind));
    if (has_dupes(kind_tags)) fail("duplicate game kinds");
}

namespace {

struct TrialSlot {
    bool converged = false;
    bool error = false;
    std::string error_message;
    double mean_utility = 0.0;
    double mean_power = 0.0;
    double mean_sinr = 0.0;
};

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// slots[kind_index][trial]
void run_group(const SystemParams& params, const SweepSpec& spec,
               std::vector<std::vector<TrialSlot>>& slots, const TrialObserver& observer) {
    std::mutex observer_mutex;
    auto run_trial = [&](int t) {
        Rng rng(spec.base_seed, static_cast<std::uint64_t>(t));
        Scenario scenario;
        try {
            scenario = sample_scenario(params, spec.placement, spec.channel_model, rng);
        } catch (const std::exception& e) {
            for (std::size_t ki = 0; ki < spec.kinds.size(); ++ki) {
                slots[ki][static_cast<std::size_t>(t)].error = true;
                slots[ki][static_cast<std::size_t>(t)].error_message = e.what();
            }
            return;
        }
        for (std::size_t ki = 0; ki < spec.kinds.size(); ++ki) {
            TrialSlot& slot = slots[ki][static_cast<std::size_t>(t)];
            try {
                const EquilibriumReport report =
                    solve_game(scenario, params, spec.kinds[ki], spec.solve);
                slot.converged = report.converged;
                slot.mean_utility = mean_of(report.utility);
                slot.mean_power = mean_of(report.state.powers);
                slot.mean_sinr = mean_of(report.sinr);
                if (observer) {
                    const std::lock_guard<std::mutex> lock(observer_mutex);
                    observer(params, scenario, spec.kinds[ki], report, t);
                }
            } catch (const std::exception& e) {
                slot.error = true;
                slot.error_message = e.what();
            }
        }
    };

    if (spec.threads <= 1) {
        for (int t = 0; t < spec.trials; ++t) run_trial(t);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= spec.trials) return;
            run_trial(t);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min(spec.threads, spec.trials);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
}

CellStats reduce_cell(GameKind kind, int n_users, int n_rx, const std::vector<TrialSlot>& slots) {
    CellStats cell;
    cell.kind = kind;
    cell.n_users = n_users;
    cell.n_rx = n_rx;
    cell.trials = static_cast<int>(slots.size());

    std::vector<double> u, p, g;
    for (const TrialSlot& slot : slots) {  // trial order: thread-count independent
        if (slot.error) {
            ++cell.error_trials;
            if (cell.first_error.empty()) cell.first_error = slot.error_message;
            continue;
        }
        if (!slot.converged) continue;
        ++cell.converged_trials;
        u.push_back(slot.mean_utility);
        p.push_back(slot.mean_power);
        g.push_back(slot.mean_sinr);
    }
    cell.convergence_rate =
        static_cast<double>(cell.converged_trials) / static_cast<double>(cell.trials);

    auto mean_se = [](const std::vector<double>& v, double& mean, double& se) {
        const std::size_t n = v.size();
        if (n == 0) {
            mean = std::numeric_limits<double>::quiet_NaN();
            se = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        mean = mean_of(v);
        if (n < 2) {
            se = 0.0;
            return;
        }
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        se = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    };
    mean_se(u, cell.mean_utility, cell.se_utility);
    mean_se(p, cell.mean_power_w, cell.se_power);
    mean_se(g, cell.mean_sinr, cell.se_sinr);
    return cell;
}

}  // namespace

SweepSummary run_sweep(const SweepSpec& spec, const TrialObserver& observer) {
    validate(spec);

    // keyed [k_index][nrx_index][kind_index]
    std::vector<std::vector<std::vector<CellStats>>> grid(
        spec.k_values.size(),
        std::vector<std::vector<CellStats>>(spec.nrx_values.size(),
                                            std::vector<CellStats>(spec.kinds.size())));

    for (std::size_t kvi = 0; kvi < spec.k_values.size(); ++kvi) {
        for (std::size_t ni = 0; ni < spec.nrx_values.size(); ++ni) {
            const SystemParams params =
                resolve_params(spec.overrides, spec.k_values[kvi], spec.nrx_values[ni]);
            std::vector<std::vector<TrialSlot>> slots(
                spec.kinds.size(), std::vector<TrialSlot>(static_cast<std::size_t>(spec.trials)));
            run_group(params, spec, slots, observer);
            for (std::size_t ki = 0; ki < spec.kinds.size(); ++ki)
                grid[kvi][ni][ki] = reduce_cell(spec.kinds[ki], spec.k_values[kvi],
                                                spec.nrx_values[ni], slots[ki]);
        }
    }

    SweepSummary summary;
    for (std::size_t ki = 0; ki < spec.kinds.size(); ++ki)
        for (std::size_t kvi = 0; kvi < spec.k_values.size(); ++kvi)
            for (std::size_t ni = 0; ni < spec.nrx_values.size(); ++ni)
                summary.cells.push_back(grid[kvi][ni][ki]);
    return summary;
}

const CellStats* find_cell(const SweepSummary& summary, GameKind kind, int n_users, int n_rx) {
    for (const CellStats& cell : summary.cells)
        if (cell.kind == kind && cell.n_users == n_users && cell.n_rx == n_rx) return &cell;
    return nullptr;
}

double paired_ratio(const SweepSummary& summary, GameKind kind_a, GameKind kind_b, int n_users,
                    int n_rx) {
    const CellStats* a = find_cell(summary, kind_a, n_users, n_rx);
    const CellStats* b = find_cell(summary, kind_b, n_users, n_rx);
    if (!a || !b) throw std::invalid_argument("paired_ratio: cell not present in summary");
    return a->mean_utility / b->mean_utility;
}

}  // namespace mimogames
