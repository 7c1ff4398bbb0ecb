#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "coopt/cop.hpp"

namespace coopt {

/// Soft-decision state of the multi-agent iteration. Each variable i carries
/// an assignment state table psi[i] (non-negative, unit L2 norm after every
/// normalization) and its derived assignment probability table
/// prob[i][x] = psi[i][x]^alpha / sum_y psi[i][y]^alpha.
struct AgentState {
    std::vector<std::vector<double>> psi;
    std::vector<std::vector<double>> prob;
    int iteration = 0;
};

/// Within-sweep visibility of peer updates: gauss_seidel reads the tables
/// already refreshed in the current sweep, jacobi reads the previous
/// iteration's tables throughout.
enum class Schedule { gauss_seidel, jacobi };

struct SolverConfig {
    double hbar = 1.0;
    double alpha = 2.0;
    int max_iterations = 20;
    std::uint64_t seed = 0;
    Schedule schedule = Schedule::gauss_seidel;
    bool track_best = false;
    /// Early stop when the fixed-point residual falls below this value;
    /// 0 disables early stopping and the full iteration budget runs.
    double stop_residual = 0.0;
};

struct SolverReport {
    Assignment solution;
    double cost = 0.0;
    /// Cost of the argmax assignment after each completed sweep.
    std::vector<double> cost_trajectory;
    /// Fixed-point residual between consecutive sweeps (see
    /// fixed_point_residual); entry k compares sweep k to its predecessor.
    std::vector<double> residual_trajectory;
    /// Lowest-cost argmax assignment seen over all sweeps, when tracked.
    Assignment best_solution;
    std::optional<double> best_cost;
    double wall_seconds = 0.0;
    int iterations_run = 0;
};

/// Called after each completed sweep with the sweep number (1-based) and the
/// current state; used by diagnostics and tests to checkpoint a run.
using SweepObserver = std::function<void(int iteration, const AgentState&)>;

/// Random non-negative initial state: psi filled with uniforms from [0, 1)
/// (one SplitMix64 stream seeded cfg.seed; variables ascending, values
/// ascending), each table normalized to unit L2 norm. An all-zero draw is
/// redrawn from the same stream.
AgentState init_state(const CopInstance& inst, const SolverConfig& cfg);

/// p(x) = psi(x)^alpha / sum_y psi(y)^alpha. Entries must be non-negative;
/// an all-zero table is a NumericFault.
std::vector<double> to_probability(const std::vector<double>& psi_table, double alpha);

/// One soft-decision update of variable i, in the factorized form
///
///   psi_i(x_i) = e^{-f_i(x_i)/hbar} * prod_{j in N(i)} sum_{x_j}
///                e^{-f_ij(x_i,x_j)/hbar} * p_j(x_j),
///
/// normalized to unit L2 norm. Non-neighbors marginalize to 1 because each
/// p_j sums to 1, so only incident edges enter; cost is
/// O(sum_{j in N(i)} d_i * d_j). Throws NumericFault when the whole table
/// underflows to zero (raise hbar) or turns non-finite.
std::vector<double> update_agent(const CopInstance& inst, const AgentState& state, int i,
                                 const SolverConfig& cfg);

/// Ground-truth update: the literal sum over the full joint space,
///
///   psi_i(x_i) = sum_{~x_i} e^{-E_i(x)/hbar} * prod_{j != i} p_j(x_j),
///
/// normalized. Exponential in n; guarded by state_space_cap on
/// prod_{j != i} d_j. Exists as the independent oracle for update_agent.
std::vector<double> naive_update_oracle(const CopInstance& inst, const AgentState& state, int i,
                                        const SolverConfig& cfg, std::uint64_t state_space_cap);

/// The full discrete-time solver: random init, then max_iterations sweeps of
/// per-variable updates (normalizing each table immediately after its
/// update), reading the per-variable argmax as the running solution. Returns
/// the final-sweep argmax assignment and its total cost, with per-sweep cost
/// and residual trajectories; with track_best also the best argmax
/// assignment seen across sweeps.
SolverReport run_qoa(const CopInstance& inst, const SolverConfig& cfg,
                     const SweepObserver& observer = {});

/// max over variables of the L-infinity distance between the two states'
/// probability tables; 0 exactly at a fixed point of the iteration.
double fixed_point_residual(const AgentState& prev, const AgentState& next);

/// Diagonal effective local energy of variable i under the current state:
///
///   h_i(x_i) = f_i(x_i) + sum_{j in N(i)} sum_{x_j} f_ij(x_i,x_j) * psi_j(x_j)^2.
std::vector<double> effective_field(const CopInstance& inst, const AgentState& state, int i);

/// One explicit Euler step of the normalized gradient flow
///
///   hbar * dpsi_i/dt = -psi_i(x_i) * h_i(x_i),    then renormalize,
///
/// applied to every variable simultaneously from the input state. The
/// normalization factor is realized by the renormalization itself. Throws
/// NumericFault if the step produces non-finite values (reduce dt).
AgentState flow_step(const CopInstance& inst, const AgentState& state, double dt,
                     const SolverConfig& cfg);

/// Closed-form frozen-field evolution psi(x, t) = psi(x, 0) * e^{-h(x) t / hbar},
/// renormalized. Valid while h is held fixed; this is the diagonal case of
/// the eigen-expansion (basis vectors are the eigenvectors, h the
/// eigenvalues), so the smallest h value dominates as t grows.
std::vector<double> closed_form_evolution(const std::vector<double>& h,
                                          const std::vector<double>& psi0, double t, double hbar);

/// Distance of psi from being an eigenvector of the diagonal operator h:
/// min over e of ||h .* psi - e * psi||_2, attained at
/// e* = sum_x h(x) psi(x)^2 for unit-norm psi. Zero at a stationary state.
double stationary_residual(const std::vector<double>& h, const std::vector<double>& psi);

}  // namespace coopt
