#include "coopt/local_search.hpp"

#include <chrono>
#include <utility>

#include "coopt/fault.hpp"
#include "coopt/splitmix64.hpp"

namespace coopt {

LsReport local_search_from(const CopInstance& inst, Assignment start) {
    if (!assignment_valid(inst, start)) throw ContractFault("invalid starting assignment");
    const auto t0 = std::chrono::steady_clock::now();

    LsReport report;
    Assignment current = std::move(start);
    std::vector<double> costs;

    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < inst.n; ++i) {
            local_cost_table(inst, i, current, costs);
            const int cur = current.values[static_cast<std::size_t>(i)];
            int best = 0;
            for (int v = 1; v < inst.domain_size(i); ++v)
                if (costs[static_cast<std::size_t>(v)] < costs[static_cast<std::size_t>(best)]) best = v;
            // Keep the current value when it ties the minimum.
            if (costs[static_cast<std::size_t>(cur)] > costs[static_cast<std::size_t>(best)]) {
                current.values[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        ++report.sweeps;
        report.sweep_costs.push_back(total_cost(inst, current));
    }

    report.solution = std::move(current);
    report.cost = report.sweep_costs.back();
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

LsReport local_search_run(const CopInstance& inst, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Assignment start;
    start.values.resize(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i)
        start.values[static_cast<std::size_t>(i)] =
            static_cast<int>(rng.next_below(static_cast<std::uint64_t>(inst.domain_size(i))));
    return local_search_from(inst, std::move(start));
}

bool check_local_optimum(const CopInstance& inst, const Assignment& a) {
    if (!assignment_valid(inst, a)) throw ContractFault("invalid assignment");
    std::vector<double> costs;
    for (int i = 0; i < inst.n; ++i) {
        local_cost_table(inst, i, a, costs);
        const double cur = costs[static_cast<std::size_t>(a.values[static_cast<std::size_t>(i)])];
        for (int v = 0; v < inst.domain_size(i); ++v)
            if (costs[static_cast<std::size_t>(v)] < cur) return false;
    }
    return true;
}

LsReport mrls_run(const CopInstance& inst, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw ContractFault("restarts must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    LsReport best;
    std::vector<double> restart_costs;
    restart_costs.reserve(static_cast<std::size_t>(restarts));
    int total_sweeps = 0;

    for (int r = 0; r < restarts; ++r) {
        LsReport run = local_search_run(inst, derive_seed(seed, static_cast<std::uint64_t>(r)));
        restart_costs.push_back(run.cost);
        total_sweeps += run.sweeps;
        if (r == 0 || run.cost < best.cost) best = std::move(run);
    }

    best.restarts_used = restarts;
    best.restart_costs = std::move(restart_costs);
    best.sweeps = total_sweeps;
    best.sweep_costs.clear();
    best.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

}  // namespace coopt
