// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lanematch/graph.hpp"

namespace lanematch {

inline constexpr std::size_t kMaxQueryVertices = 64;

/// A connected, simple query graph with at most 64 vertices.  Besides the CSR
/// form it keeps one adjacency bitset per vertex for O(1) edge tests.
class QueryGraph {
 public:
  /// Validates `g` (nonempty, connected, <= 64 vertices); throws QueryError.
  explicit QueryGraph(Graph g);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.num_vertices(); }
  bool adjacent(VertexId a, VertexId b) const noexcept { return (bits_[a] >> b) & 1U; }
  std::uint64_t adjacency_bits(VertexId a) const noexcept { return bits_[a]; }
  std::uint32_t degree(VertexId u) const noexcept { return graph_.degree(u); }
  LabelId label(VertexId u) const noexcept { return graph_.label(u); }

 private:
  Graph graph_;
  std::vector<std::uint64_t> bits_;
};

QueryGraph load_query(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& labels_path = std::nullopt);

/// Random connected query grown from a random seed vertex of `g`.
///
/// Starting from a uniformly chosen data vertex, repeatedly adds a vertex drawn
/// uniformly from the data vertices adjacent to the current set and not yet in
/// it, together with every edge between the new vertex and the set, until `n`
/// vertices are reached.  A dead end restarts from a fresh seed vertex; after
/// 1000 failed restarts a QueryError is thrown.  Query vertex i is the i-th
/// data vertex added and inherits its label.
QueryGraph random_query(const Graph& g, std::size_t n, std::uint64_t seed);

/// Same topology, labels drawn i.i.d. with P(l) proportional to (l+1)^-alpha
/// for l in [0, sigma).  alpha = 0 is uniform relabeling.
Graph relabel_zipf(const Graph& g, std::uint32_t sigma, double alpha, std::uint64_t seed);

/// Query graph built from an explicit edge list; labels default to 0.
QueryGraph make_query(std::size_t n, std::span<const Edge> edges, std::vector<LabelId> labels = {});

}  // namespace lanematch
