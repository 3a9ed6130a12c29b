// SPDX-License-Identifier: Apache-2.0
#include "lanematch/generators.hpp"

#include <bit>
#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lanematch/rng.hpp"

namespace lanematch {

Graph rmat(const RmatParams& params, std::uint64_t seed) {
  const double sum = params.a + params.b + params.c + params.d;
  if (params.n < 2 || params.n > (std::uint64_t{1} << 32)) {
    throw ConfigError("rmat needs 2 <= n <= 2^32");
  }
  if (params.a < 0 || params.b < 0 || params.c < 0 || params.d < 0 || std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("rmat quadrant probabilities must be nonnegative and sum to 1");
  }
  const std::uint64_t max_edges = params.n * (params.n - 1) / 2;
  if (params.m > max_edges) throw ConfigError("rmat m exceeds n * (n - 1) / 2");

  const int scale = std::bit_width(params.n - 1);
  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(params.m);
  const std::uint64_t budget = 64 * params.m;
  for (std::uint64_t draw = 0; draw < budget && edges.size() < params.m; ++draw) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (int level = 0; level < scale; ++level) {
      const double r = rng.unit();
      row <<= 1;
      col <<= 1;
      if (r < params.a) {
      } else if (r < params.a + params.b) {
        col |= 1;
      } else if (r < params.a + params.b + params.c) {
        row |= 1;
      } else {
        row |= 1;
        col |= 1;
      }
    }
    if (row >= params.n || col >= params.n || row == col) continue;
    const std::uint64_t lo = std::min(row, col);
    const std::uint64_t hi = std::max(row, col);
    if (!seen.insert(lo << 32 | hi).second) continue;
    edges.emplace_back(static_cast<VertexId>(lo), static_cast<VertexId>(hi));
  }
  return Graph::from_edges(params.n, edges);
}

Graph erdos_renyi(std::uint64_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("er edge probability must be in [0, 1]");
  std::vector<Edge> edges;
  if (p > 0.0 && n > 1) {
    Rng rng(seed);
    const double log_q = std::log1p(-p);
    // Walk the pairs (w, v), w < v, row by row, jumping geometric gaps.
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double r = rng.unit();
      w += 1 + (p >= 1.0 ? 0 : static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q)));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.emplace_back(static_cast<VertexId>(w), static_cast<VertexId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph star(std::uint64_t n) {
  if (n == 0) throw ConfigError("star needs at least one vertex");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::uint64_t v = 1; v < n; ++v) edges.emplace_back(0, static_cast<VertexId>(v));
  return Graph::from_edges(n, edges);
}

Graph powerlaw(std::uint64_t n, std::uint32_t attach, std::uint64_t seed) {
  if (attach == 0) throw ConfigError("powerlaw attachment count must be positive");
  if (n <= attach) throw ConfigError("powerlaw needs n > attach");
  Rng rng(seed);
  std::vector<Edge> edges;
  // Every edge endpoint appears once here, so a uniform pick is degree-biased.
  std::vector<VertexId> endpoints;
  for (VertexId a = 0; a <= attach; ++a) {
    for (VertexId b = a + 1; b <= attach; ++b) {
      edges.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  std::vector<VertexId> targets;
  for (auto v = static_cast<VertexId>(attach + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < attach) {
      const VertexId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (VertexId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph skewed_fixture(std::uint32_t major_leaves, std::uint32_t minor_hubs, std::uint32_t minor_leaves) {
  std::vector<Edge> edges;
  std::vector<LabelId> labels;
  auto add = [&](LabelId label) {
    labels.push_back(label);
    return static_cast<VertexId>(labels.size() - 1);
  };
  auto hub = [&](std::uint32_t leaves) {
    const VertexId h = add(2);
    edges.emplace_back(h, add(1));
    for (std::uint32_t i = 0; i < leaves; ++i) edges.emplace_back(h, add(0));
  };
  hub(major_leaves);
  for (std::uint32_t i = 0; i < minor_hubs; ++i) hub(minor_leaves);
  return Graph::from_edges(labels.size(), edges, labels);
}

QueryGraph skewed_query() {
  const Edge edges[] = {{0, 1}, {1, 2}, {1, 3}, {1, 4}};
  return make_query(5, edges, {1, 2, 0, 0, 0});
}

QueryGraph triangle_pattern() {
  const Edge edges[] = {{0, 1}, {1, 2}, {0, 2}};
  return make_query(3, edges);
}

QueryGraph cycle4_pattern() {
  const Edge edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return make_query(4, edges);
}

QueryGraph clique4_pattern() {
  const Edge edges[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return make_query(4, edges);
}

QueryGraph house5_pattern() {
  const Edge edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}};
  return make_query(5, edges);
}

}  // namespace lanematch
