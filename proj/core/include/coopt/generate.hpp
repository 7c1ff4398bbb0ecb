#pragma once

#include <cstdint>

#include "coopt/cop.hpp"

namespace coopt {

/// Parameters of a random benchmark instance. The graph is a uniform random
/// simple graph with m = round(n * avg_degree / 2) edges; every cost is
/// uniform in [0, 1).
struct GenSpec {
    int n = 0;
    int d = 0;
    double avg_degree = 0.0;
    std::uint64_t seed = 0;
};

/// Edge count implied by a spec: round(n * avg_degree / 2).
std::uint64_t gen_edge_count(const GenSpec& spec);

/// Deterministic instance generation. One SplitMix64 stream seeded with
/// spec.seed drives everything, in this fixed order:
///   1. edge sampling: draw i = (u64 mod n)+1 then j = (u64 mod n)+1,
///      canonicalize to i < j, reject self-loops and repeats, until m
///      distinct edges are collected; the edge list is then sorted by (i, j);
///   2. unary costs, variables ascending, values ascending;
///   3. binary costs, sorted edge order, row-major.
/// Two calls with the same spec produce bit-identical instances, in any
/// conforming implementation of the stream.
///
/// Throws GuardFault when m exceeds n(n-1)/2 and ContractFault on n < 1 or
/// d < 1.
CopInstance generate_instance(const GenSpec& spec);

}  // namespace coopt
