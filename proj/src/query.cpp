// SPDX-License-Identifier: Apache-2.0
#include "lanematch/query.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lanematch/rng.hpp"

namespace lanematch {

namespace {

constexpr int kMaxRestarts = 1000;

bool is_connected(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace

QueryGraph::QueryGraph(Graph g) : graph_(std::move(g)) {
  const std::size_t n = graph_.num_vertices();
  if (n == 0) throw QueryError("query graph has no vertices");
  if (n > kMaxQueryVertices) {
    throw QueryError("query graph has " + std::to_string(n) + " vertices; at most " +
                     std::to_string(kMaxQueryVertices) + " are supported");
  }
  if (!is_connected(graph_)) throw QueryError("query graph is not connected");
  bits_.assign(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId w : graph_.neighbors(u)) bits_[u] |= std::uint64_t{1} << w;
  }
}

QueryGraph load_query(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& labels_path) {
  return QueryGraph(load_text(path, labels_path));
}

QueryGraph make_query(std::size_t n, std::span<const Edge> edges, std::vector<LabelId> labels) {
  return QueryGraph(Graph::from_edges(n, edges, std::move(labels)));
}

QueryGraph random_query(const Graph& g, std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > kMaxQueryVertices) {
    throw QueryError("query size must be in [1, " + std::to_string(kMaxQueryVertices) + "]");
  }
  if (g.num_vertices() == 0) throw QueryError("cannot draw a query from an empty data graph");

  Rng rng(seed);
  std::vector<VertexId> members;
  std::unordered_map<VertexId, VertexId> query_id;
  std::vector<VertexId> frontier;
  std::unordered_map<VertexId, std::size_t> frontier_pos;
  std::vector<Edge> edges;

  auto admit = [&](VertexId v) {
    const auto qid = static_cast<VertexId>(members.size());
    members.push_back(v);
    query_id.emplace(v, qid);
    for (VertexId w : g.neighbors(v)) {
      if (auto it = query_id.find(w); it != query_id.end()) {
        if (w != v) edges.emplace_back(it->second, qid);
      } else if (!frontier_pos.contains(w)) {
        frontier_pos.emplace(w, frontier.size());
        frontier.push_back(w);
      }
    }
  };

  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    members.clear();
    query_id.clear();
    frontier.clear();
    frontier_pos.clear();
    edges.clear();

    admit(static_cast<VertexId>(rng.below(g.num_vertices())));
    while (members.size() < n && !frontier.empty()) {
      const std::size_t idx = rng.below(frontier.size());
      const VertexId v = frontier[idx];
      // Swap-with-last removal; part of the reproducible procedure.
      frontier_pos.erase(v);
      if (idx + 1 != frontier.size()) {
        frontier[idx] = frontier.back();
        frontier_pos[frontier[idx]] = idx;
      }
      frontier.pop_back();
      admit(v);
    }
    if (members.size() == n) {
      std::vector<LabelId> labels(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = g.label(members[i]);
      return QueryGraph(Graph::from_edges(n, edges, std::move(labels)));
    }
  }
  throw QueryError("could not grow a connected " + std::to_string(n) + "-vertex query after " +
                   std::to_string(kMaxRestarts) + " restarts (data graph components too small)");
}

Graph relabel_zipf(const Graph& g, std::uint32_t sigma, double alpha, std::uint64_t seed) {
  if (sigma == 0 || sigma > 65536) throw ConfigError("label count must be in [1, 65536]");
  if (!(alpha >= 0.0)) throw ConfigError("zipf exponent must be nonnegative");
  std::vector<double> cumulative(sigma);
  double total = 0.0;
  for (std::uint32_t l = 0; l < sigma; ++l) {
    total += std::pow(static_cast<double>(l) + 1.0, -alpha);
    cumulative[l] = total;
  }
  Rng rng(seed);
  std::vector<LabelId> labels(g.num_vertices());
  for (auto& label : labels) {
    if (sigma == 1) {
      label = 0;
      continue;
    }
    const double x = rng.unit() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    if (it == cumulative.end()) --it;
    label = static_cast<LabelId>(it - cumulative.begin());
  }
  return g.with_labels(std::move(labels), sigma);
}

}  // namespace lanematch
