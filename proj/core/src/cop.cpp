#include "coopt/cop.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "coopt/fault.hpp"

namespace coopt {

void CopInstance::rebuild_adjacency() {
    adjacency.assign(static_cast<std::size_t>(n), {});
    std::vector<int> order(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(edges[a].i, edges[a].j) < std::pair(edges[b].i, edges[b].j);
    });
    for (int k : order) {
        const Edge& e = edges[static_cast<std::size_t>(k)];
        if (e.i >= 0 && e.i < n) adjacency[static_cast<std::size_t>(e.i)].push_back(k);
        if (e.j >= 0 && e.j < n && e.j != e.i) adjacency[static_cast<std::size_t>(e.j)].push_back(k);
    }
}

std::uint64_t CopInstance::state_space_size() const {
    std::uint64_t total = 1;
    for (int d : domain_sizes) {
        if (d <= 0) return 0;
        const auto du = static_cast<std::uint64_t>(d);
        if (total > std::numeric_limits<std::uint64_t>::max() / du)
            return std::numeric_limits<std::uint64_t>::max();
        total *= du;
    }
    return total;
}

CopInstance make_instance(int n, std::vector<int> domain_sizes,
                          std::vector<std::vector<double>> unary, std::vector<Edge> edges) {
    CopInstance inst;
    inst.n = n;
    inst.domain_sizes = std::move(domain_sizes);
    inst.unary = std::move(unary);
    inst.edges = std::move(edges);
    inst.rebuild_adjacency();
    return inst;
}

bool assignment_valid(const CopInstance& inst, const Assignment& a) {
    if (static_cast<int>(a.values.size()) != inst.n) return false;
    for (int i = 0; i < inst.n; ++i) {
        if (a.values[static_cast<std::size_t>(i)] < 0 ||
            a.values[static_cast<std::size_t>(i)] >= inst.domain_size(i))
            return false;
    }
    return true;
}

std::vector<Violation> validate_instance(const CopInstance& inst) {
    std::vector<Violation> out;
    const auto nu = static_cast<std::size_t>(inst.n);

    if (inst.n < 1) out.push_back({"variable count must be >= 1", -1, -1});
    if (inst.domain_sizes.size() != nu)
        out.push_back({"domain_sizes length != n", -1, -1});
    if (inst.unary.size() != nu) out.push_back({"unary table count != n", -1, -1});

    for (std::size_t i = 0; i < inst.domain_sizes.size() && i < nu; ++i) {
        if (inst.domain_sizes[i] < 1)
            out.push_back({"domain size must be >= 1 at variable " + std::to_string(i),
                           static_cast<int>(i), -1});
    }
    for (std::size_t i = 0; i < inst.unary.size() && i < nu; ++i) {
        if (i < inst.domain_sizes.size() &&
            inst.unary[i].size() != static_cast<std::size_t>(inst.domain_sizes[i]))
            out.push_back({"unary table length mismatch at variable " + std::to_string(i),
                           static_cast<int>(i), -1});
    }

    std::vector<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < inst.edges.size(); ++k) {
        const Edge& e = inst.edges[k];
        const int ek = static_cast<int>(k);
        if (e.i == e.j) {
            out.push_back({"self-loop at edge " + std::to_string(k), e.i, ek});
            continue;
        }
        if (e.i < 0 || e.j < 0 || e.i >= inst.n || e.j >= inst.n) {
            out.push_back({"edge " + std::to_string(k) + " endpoint out of range", -1, ek});
            continue;
        }
        if (e.i > e.j) {
            out.push_back({"edge " + std::to_string(k) + " endpoints not ascending", -1, ek});
            continue;
        }
        if (std::find(seen.begin(), seen.end(), std::pair(e.i, e.j)) != seen.end())
            out.push_back({"duplicate edge (" + std::to_string(e.i + 1) + "," +
                               std::to_string(e.j + 1) + ") at edge " + std::to_string(k),
                           -1, ek});
        seen.emplace_back(e.i, e.j);
        const auto want = static_cast<std::size_t>(inst.domain_size(e.i)) *
                          static_cast<std::size_t>(inst.domain_size(e.j));
        if (e.costs.size() != want)
            out.push_back({"cost table length mismatch at edge " + std::to_string(k), -1, ek});
    }

    // Cached adjacency must match a fresh rebuild.
    CopInstance copy;
    copy.n = inst.n;
    copy.edges = inst.edges;
    copy.rebuild_adjacency();
    if (copy.adjacency != inst.adjacency)
        out.push_back({"cached adjacency does not match edges", -1, -1});

    return out;
}

namespace {

void check_assignment(const CopInstance& inst, const Assignment& a) {
    if (static_cast<int>(a.values.size()) != inst.n)
        throw ContractFault("assignment length " + std::to_string(a.values.size()) +
                            " != variable count " + std::to_string(inst.n));
    for (int i = 0; i < inst.n; ++i) {
        const int v = a.values[static_cast<std::size_t>(i)];
        if (v < 0 || v >= inst.domain_size(i))
            throw ContractFault("value " + std::to_string(v) + " out of domain at variable " +
                                std::to_string(i));
    }
}

}  // namespace

double total_cost(const CopInstance& inst, const Assignment& a) {
    check_assignment(inst, a);
    double sum = 0.0;
    for (int i = 0; i < inst.n; ++i)
        sum += inst.unary[static_cast<std::size_t>(i)][static_cast<std::size_t>(a.values[static_cast<std::size_t>(i)])];
    // Edge terms ascending by (i, j): walk each variable's adjacency and take
    // the edges it owns as the smaller endpoint. Storage order cannot matter.
    for (int i = 0; i < inst.n; ++i) {
        for (int k : inst.adjacency[static_cast<std::size_t>(i)]) {
            const Edge& e = inst.edges[static_cast<std::size_t>(k)];
            if (e.i != i) continue;
            sum += inst.edge_cost(e, a.values[static_cast<std::size_t>(e.i)],
                                  a.values[static_cast<std::size_t>(e.j)]);
        }
    }
    return sum;
}

double local_cost(const CopInstance& inst, int i, const Assignment& a) {
    check_assignment(inst, a);
    if (i < 0 || i >= inst.n)
        throw ContractFault("variable index " + std::to_string(i) + " out of range");
    return local_cost_at(inst, i, a.values[static_cast<std::size_t>(i)], a);
}

double local_cost_at(const CopInstance& inst, int i, int value, const Assignment& a) {
    const auto iu = static_cast<std::size_t>(i);
    if (value < 0 || value >= inst.domain_size(i))
        throw ContractFault("value " + std::to_string(value) + " out of domain at variable " +
                            std::to_string(i));
    double sum = inst.unary[iu][static_cast<std::size_t>(value)];
    for (int k : inst.adjacency[iu]) {
        const Edge& e = inst.edges[static_cast<std::size_t>(k)];
        if (e.i == i)
            sum += inst.edge_cost(e, value, a.values[static_cast<std::size_t>(e.j)]);
        else
            sum += inst.edge_cost(e, a.values[static_cast<std::size_t>(e.i)], value);
    }
    return sum;
}

void local_cost_table(const CopInstance& inst, int i, const Assignment& a, std::vector<double>& out) {
    const auto iu = static_cast<std::size_t>(i);
    const int d = inst.domain_size(i);
    out.assign(static_cast<std::size_t>(d), 0.0);
    for (int v = 0; v < d; ++v) out[static_cast<std::size_t>(v)] = inst.unary[iu][static_cast<std::size_t>(v)];
    for (int k : inst.adjacency[iu]) {
        const Edge& e = inst.edges[static_cast<std::size_t>(k)];
        if (e.i == i) {
            const int dj = inst.domain_size(e.j);
            const int other = a.values[static_cast<std::size_t>(e.j)];
            const double* col = e.costs.data() + other;
            for (int v = 0; v < d; ++v) out[static_cast<std::size_t>(v)] += col[static_cast<std::size_t>(v) * dj];
        } else {
            const int other = a.values[static_cast<std::size_t>(e.i)];
            const double* row = e.costs.data() + static_cast<std::size_t>(other) * d;
            for (int v = 0; v < d; ++v) out[static_cast<std::size_t>(v)] += row[v];
        }
    }
}

std::pair<Assignment, double> brute_force_optimum(const CopInstance& inst, std::uint64_t state_space_cap) {
    const std::uint64_t space = inst.state_space_size();
    if (space > state_space_cap)
        throw GuardFault("state space " +
                         (space == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("(uint64 overflow)")
                              : std::to_string(space)) +
                         " exceeds cap " + std::to_string(state_space_cap));

    Assignment current{std::vector<int>(static_cast<std::size_t>(inst.n), 0)};
    Assignment best = current;
    double best_cost = total_cost(inst, current);

    // Odometer enumeration in lexicographic order; strict improvement keeps
    // the lexicographically smallest optimum.
    while (true) {
        int pos = inst.n - 1;
        while (pos >= 0) {
            auto& v = current.values[static_cast<std::size_t>(pos)];
            if (++v < inst.domain_size(pos)) break;
            v = 0;
            --pos;
        }
        if (pos < 0) break;
        const double c = total_cost(inst, current);
        if (c < best_cost) {
            best_cost = c;
            best = current;
        }
    }
    return {best, best_cost};
}

}  // namespace coopt
