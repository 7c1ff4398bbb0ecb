#pragma once

#include <vector>

#include "coopt/cop.hpp"

namespace coopt::test {

/// Two-variable reference instance used across the suites:
/// f1 = [0.2, 0.8], f2 = [0.5, 0.1], one edge with rows [[0.0, 0.3], [0.4, 0.2]].
/// Its unique optimum is (0, 1) at cost 0.2 + 0.1 + 0.3.
inline CopInstance make_t2() {
    return make_instance(2, {2, 2}, {{0.2, 0.8}, {0.5, 0.1}},
                         {Edge{0, 1, {0.0, 0.3, 0.4, 0.2}}});
}

inline CopInstance make_all_zero(int n, int d) {
    std::vector<int> sizes(static_cast<std::size_t>(n), d);
    std::vector<std::vector<double>> unary(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(d), 0.0));
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back(Edge{i, i + 1, std::vector<double>(static_cast<std::size_t>(d) * d, 0.0)});
    return make_instance(n, std::move(sizes), std::move(unary), std::move(edges));
}

}  // namespace coopt::test
