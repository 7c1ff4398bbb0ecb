#include "coopt/generate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "coopt/fault.hpp"
#include "coopt/splitmix64.hpp"

namespace coopt {

std::uint64_t gen_edge_count(const GenSpec& spec) {
    return static_cast<std::uint64_t>(std::llround(spec.n * spec.avg_degree / 2.0));
}

CopInstance generate_instance(const GenSpec& spec) {
    if (spec.n < 1) throw ContractFault("variable count must be >= 1");
    if (spec.d < 1) throw ContractFault("domain size must be >= 1");
    if (spec.avg_degree < 0.0) throw ContractFault("average degree must be >= 0");

    const auto n = static_cast<std::uint64_t>(spec.n);
    const std::uint64_t m = gen_edge_count(spec);
    const std::uint64_t max_edges = n * (n - 1) / 2;
    if (m > max_edges)
        throw GuardFault("requested " + std::to_string(m) + " edges but only " +
                         std::to_string(max_edges) + " distinct pairs exist for n=" +
                         std::to_string(spec.n));

    SplitMix64 rng(spec.seed);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(m);
    std::unordered_set<std::uint64_t> taken;
    while (pairs.size() < m) {
        int i = static_cast<int>(rng.next_below(n)) + 1;
        int j = static_cast<int>(rng.next_below(n)) + 1;
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        const std::uint64_t key = static_cast<std::uint64_t>(i) * n + static_cast<std::uint64_t>(j);
        if (!taken.insert(key).second) continue;
        pairs.emplace_back(i, j);
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<int> domain_sizes(static_cast<std::size_t>(spec.n), spec.d);
    std::vector<std::vector<double>> unary(static_cast<std::size_t>(spec.n));
    for (auto& table : unary) {
        table.resize(static_cast<std::size_t>(spec.d));
        for (double& c : table) c = rng.next_double();
    }

    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    const auto table_len = static_cast<std::size_t>(spec.d) * static_cast<std::size_t>(spec.d);
    for (auto [i, j] : pairs) {
        Edge e;
        e.i = i - 1;
        e.j = j - 1;
        e.costs.resize(table_len);
        for (double& c : e.costs) c = rng.next_double();
        edges.push_back(std::move(e));
    }

    return make_instance(spec.n, std::move(domain_sizes), std::move(unary), std::move(edges));
}

}  // namespace coopt
