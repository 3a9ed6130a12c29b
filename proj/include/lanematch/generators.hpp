// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "lanematch/query.hpp"

namespace lanematch {

struct RmatParams {
  std::uint64_t n = 1U << 14;
  std::uint64_t m = 1U << 17;  // distinct undirected edges requested
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
};

/// Recursive-quadrant generator.  Each sample descends ceil(log2 n) levels of
/// the adjacency matrix picking a quadrant with probabilities (a, b, c, d);
/// endpoints >= n, self-loops and repeats are rejected until m distinct edges
/// exist or 64 * m samples have been drawn.
Graph rmat(const RmatParams& params, std::uint64_t seed);

/// G(n, p) with geometric skipping over the upper-triangle pairs.
Graph erdos_renyi(std::uint64_t n, double p, std::uint64_t seed);

/// K_{1, n-1}: vertex 0 joined to every other vertex.
Graph star(std::uint64_t n);

/// Preferential attachment: each new vertex joins `attach` distinct existing
/// vertices chosen proportionally to degree, starting from a clique of
/// attach + 1 vertices.
Graph powerlaw(std::uint64_t n, std::uint32_t attach, std::uint64_t seed);

/// Labeled fixture whose search tree is dominated by one seed.  One major hub
/// (label 2) holds `major_leaves` label-0 leaves and one label-1 anchor;
/// `minor_hubs` further hubs each hold `minor_leaves` leaves and an anchor.
Graph skewed_fixture(std::uint32_t major_leaves = 200, std::uint32_t minor_hubs = 60,
                     std::uint32_t minor_leaves = 4);

/// Anchor (label 1) - hub (label 2) - three leaves (label 0): matches on
/// skewed_fixture concentrate under the major hub.
QueryGraph skewed_query();

QueryGraph triangle_pattern();
QueryGraph cycle4_pattern();
QueryGraph clique4_pattern();
/// 4-cycle 0-1-2-3 with roof vertex 4 joined to 0 and 1.
QueryGraph house5_pattern();

}  // namespace lanematch
