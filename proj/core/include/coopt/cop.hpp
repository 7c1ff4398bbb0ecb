#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coopt {

/// One binary cost term between variables i < j (0-based). costs is the
/// d_i x d_j table in row-major order: costs[vi * d_j + vj].
struct Edge {
    int i = 0;
    int j = 0;
    std::vector<double> costs;

    bool operator==(const Edge&) const = default;
};

/// A constraint optimization problem: minimize
///   sum_i unary[i][x_i] + sum_{(i,j) in edges} costs_ij[x_i][x_j]
/// over discrete x_i in [0, domain_sizes[i]).
///
/// Instances are treated as immutable once built; rebuild_adjacency() caches
/// the per-variable incident-edge index that evaluation routines rely on.
/// Safe to share across threads after construction.
struct CopInstance {
    int n = 0;
    std::vector<int> domain_sizes;
    std::vector<std::vector<double>> unary;
    std::vector<Edge> edges;

    /// Per-variable list of incident edge indices, ordered by the edge pair
    /// (i, j) ascending. Derived from edges; kept in sync by the factories.
    std::vector<std::vector<int>> adjacency;

    void rebuild_adjacency();

    int domain_size(int var) const { return domain_sizes[static_cast<std::size_t>(var)]; }

    double edge_cost(const Edge& e, int vi, int vj) const {
        return e.costs[static_cast<std::size_t>(vi) * domain_sizes[static_cast<std::size_t>(e.j)] + vj];
    }

    /// Number of joint assignments, saturated at uint64 max on overflow.
    std::uint64_t state_space_size() const;

    bool operator==(const CopInstance&) const = default;
};

/// Builds an instance and caches its adjacency. Does not validate; call
/// validate_instance to check the invariants.
CopInstance make_instance(int n, std::vector<int> domain_sizes,
                          std::vector<std::vector<double>> unary, std::vector<Edge> edges);

/// One candidate solution: a 0-based value index per variable.
struct Assignment {
    std::vector<int> values;

    bool operator==(const Assignment&) const = default;
};

bool assignment_valid(const CopInstance& inst, const Assignment& a);

/// One broken invariant. variable/edge are 0-based locations, -1 when not
/// applicable; message is human-readable.
struct Violation {
    std::string message;
    int variable = -1;
    int edge = -1;
};

/// Checks every structural invariant (edge endpoints, table dimensions,
/// duplicate edges, adjacency consistency). Violations are returned as data,
/// never thrown; an empty result means the instance is well formed.
std::vector<Violation> validate_instance(const CopInstance& inst);

/// Total objective. Accumulation order is fixed for reproducibility: unary
/// terms for variables ascending, then edge terms ascending by (i, j)
/// independent of storage order. Throws ContractFault on an out-of-domain
/// value index.
double total_cost(const CopInstance& inst, const Assignment& a);

/// Agent i's share of the objective: its unary term plus every incident
/// binary term (each edge cost therefore appears in both endpoints' totals).
/// Minimizing this over x_i with the rest fixed also lowers the total.
double local_cost(const CopInstance& inst, int i, const Assignment& a);

/// local_cost with a.values[i] replaced by value (a itself untouched).
double local_cost_at(const CopInstance& inst, int i, int value, const Assignment& a);

/// Fills out[v] = local_cost_at(inst, i, v, a) for every value v of variable
/// i. Single pass over the incident edges; the workhorse of the search loops.
void local_cost_table(const CopInstance& inst, int i, const Assignment& a, std::vector<double>& out);

/// Exhaustive global optimum, for oracle use on small instances. Enumerates
/// assignments in lexicographic order and keeps the first minimum, so ties
/// break toward the lexicographically smallest assignment. Throws GuardFault
/// when the state space exceeds state_space_cap.
std::pair<Assignment, double> brute_force_optimum(const CopInstance& inst, std::uint64_t state_space_cap);

}  // namespace coopt
