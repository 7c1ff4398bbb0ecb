#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coopt/cop.hpp"
#include "coopt/generate.hpp"
#include "coopt/qoa.hpp"

namespace coopt {

/// One row of the comparison table.
struct BenchRecord {
    std::string instance_id;
    std::string algorithm;  // "qoa" or "mrls"
    std::int64_t trials = 0;
    double cost = 0.0;
    double wall_seconds = 0.0;
    /// Present on qoa rows: percentage improvement over the paired mrls cost.
    std::optional<double> improvement_pct;
    /// Fault message when the run failed; such rows carry cost = NaN. Not
    /// part of the CSV.
    std::string error;
};

/// 100 * (mrls_cost - qoa_cost) / qoa_cost. The raw value; display rounding
/// happens in write_report. Throws ContractFault when qoa_cost <= 0.
double improvement_pct(double mrls_cost, double qoa_cost);

/// Round half-up to two decimals, as the report prints improvements.
double round_improvement(double pct);

/// A named instance to compare on.
struct BenchInput {
    std::string id;
    CopInstance instance;
};

/// Runs the two-solver comparison on each instance: one mrls record
/// (best of `mrls_restarts` restarts) followed by one qoa record (single
/// run), each wall-clock timed around the solver call only. Per-instance
/// solver seeds come from the master seed: instance k uses
/// derive_seed(master, 3k+1) for mrls and derive_seed(master, 3k+2) for qoa
/// (3k is reserved for generation, see below). A solver fault is recorded on
/// the row (cost NaN) without aborting the batch. Throws ContractFault on an
/// empty batch.
std::vector<BenchRecord> run_comparison(const std::vector<BenchInput>& batch, int mrls_restarts,
                                        const SolverConfig& qoa_cfg, std::uint64_t master_seed,
                                        int jobs = 1);

/// Generation convenience: instance k is generated from specs[k] (callers
/// that want the whole batch derived from the master seed set
/// specs[k].seed = derive_seed(master, 3k), which is what the CLI does),
/// labeled "g1", "g2", ..., then compared as above.
std::vector<BenchRecord> run_comparison(const std::vector<GenSpec>& specs, int mrls_restarts,
                                        const SolverConfig& qoa_cfg, std::uint64_t master_seed,
                                        int jobs = 1);

/// CSV serialization: header
///   instance,algorithm,trials,cost,seconds,improvement_pct
/// one row per record; cost at 17 significant digits, seconds at 3 decimals,
/// improvement rounded half-up to 2 decimals, empty where not applicable.
std::string write_report(const std::vector<BenchRecord>& records);

/// Parses a CSV produced by write_report. Costs round-trip exactly;
/// seconds and improvement carry the printed (rounded) precision.
std::vector<BenchRecord> read_report(const std::string& text);

}  // namespace coopt
