#pragma once

#include <cstdint>
#include <vector>

#include "coopt/cop.hpp"

namespace coopt {

struct LsReport {
    Assignment solution;
    double cost = 0.0;
    /// Full sweeps performed, including the final no-change sweep. Summed
    /// across restarts for a multi-restart run.
    int sweeps = 0;
    /// Total cost after each sweep of a single run; strictly decreasing
    /// until the last entry, which repeats its predecessor when termination
    /// took a confirming sweep. Empty for multi-restart reports.
    std::vector<double> sweep_costs;
    double wall_seconds = 0.0;
    /// Multi-restart fields; restarts_used is 1 for a single run.
    int restarts_used = 1;
    std::vector<double> restart_costs;
};

/// Coordinate-descent local search from a given starting assignment: sweeps
/// variables in ascending order, moving each to the value minimizing its
/// local cost with the rest held fixed (the only terms of the total that
/// depend on it). A variable keeps its current value whenever that value is
/// among the minimizers, so every accepted move strictly lowers the total
/// cost and the search cannot cycle. Terminates on the first sweep that
/// changes nothing.
LsReport local_search_from(const CopInstance& inst, Assignment start);

/// local_search_from with a uniformly random start (SplitMix64 stream from
/// seed; variables ascending, value = draw mod domain size).
LsReport local_search_run(const CopInstance& inst, std::uint64_t seed);

/// True iff no single-variable value change strictly lowers the total cost.
bool check_local_optimum(const CopInstance& inst, const Assignment& a);

/// Multi-restart wrapper: restarts independent runs with derived seeds
/// derive_seed(seed, r), r = 0..restarts-1, returning the best result (ties
/// broken by the smallest restart index). The derived seeds make the outcome
/// a pure function of (seed, restarts) whatever order the runs execute in.
LsReport mrls_run(const CopInstance& inst, int restarts, std::uint64_t seed);

}  // namespace coopt
