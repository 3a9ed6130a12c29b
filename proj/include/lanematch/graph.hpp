// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lanematch/types.hpp"

namespace lanematch {

using Edge = std::pair<VertexId, VertexId>;

/// What the loader had to discard or rewrite while building a Graph.
struct LoadReport {
  std::uint64_t edge_lines = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicate_edges_dropped = 0;
  std::uint64_t unknown_label_vertices = 0;
  bool remapped = false;
};

/// Immutable undirected vertex-labeled graph in CSR form.
///
/// Every undirected edge is stored in both endpoints' neighbor slices and each
/// slice is strictly increasing, so membership is a binary search.  Used both
/// for data graphs and (wrapped in QueryGraph) for query graphs.
class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Builds a simple graph from an arbitrary edge list.  Self-loops and
  /// repeated edges (in either orientation) are dropped and counted in
  /// `report`.  Missing labels default to 0.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<LabelId> labels = {},
                          LoadReport* report = nullptr);

  /// Adopts CSR arrays after checking every structural invariant; throws
  /// FormatError on violation.
  static Graph from_csr(std::vector<EdgeOffset> offsets, std::vector<VertexId> neighbors,
                        std::vector<LabelId> labels, std::uint32_t label_count);

  std::size_t num_vertices() const noexcept { return labels_.size(); }
  /// Undirected edge count.
  std::uint64_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(VertexId v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  LabelId label(VertexId v) const noexcept { return labels_[v]; }
  std::uint32_t label_count() const noexcept { return label_count_; }
  std::uint32_t d_max() const noexcept { return d_max_; }
  double d_avg() const noexcept { return d_avg_; }

  std::span<const EdgeOffset> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> adjacency() const noexcept { return neighbors_; }
  std::span<const LabelId> labels() const noexcept { return labels_; }

  /// External id of dense vertex `v`; identity unless the input was remapped.
  std::uint64_t external_id(VertexId v) const noexcept {
    return external_ids_.empty() ? v : external_ids_[v];
  }
  std::span<const std::uint64_t> external_ids() const noexcept { return external_ids_; }
  void set_external_ids(std::vector<std::uint64_t> ids);

  /// Same topology, new labels.  `labels.size()` must equal num_vertices().
  Graph with_labels(std::vector<LabelId> labels, std::uint32_t label_count) const;

  /// Structural equality: offsets, neighbors, labels and label count.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ &&
           a.labels_ == b.labels_ && a.label_count_ == b.label_count_;
  }

 private:
  void refresh_stats();

  std::vector<EdgeOffset> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<LabelId> labels_;
  std::vector<std::uint64_t> external_ids_;
  std::uint32_t label_count_ = 1;
  std::uint32_t d_max_ = 0;
  double d_avg_ = 0.0;
};

/// Parses the whitespace edge-list format.  `# Nodes: N` (SNAP header) fixes
/// the vertex count and disables remapping; otherwise sparse ids are remapped
/// to [0, n) in ascending order.  Labels are `v label` lines keyed by the
/// external id; labels must be integers below 65536.
Graph parse_text(std::istream& edges, std::istream* labels, LoadReport* report = nullptr,
                 const std::string& edges_name = "<edges>",
                 const std::string& labels_name = "<labels>");

Graph load_text(const std::filesystem::path& path,
                const std::optional<std::filesystem::path>& labels_path = std::nullopt,
                LoadReport* report = nullptr);

/// Writes `g` back in the text format (with a `# Nodes:` header so isolated
/// vertices survive).  Labels go to `labels_path` when given.
void save_text(const Graph& g, const std::filesystem::path& path,
               const std::optional<std::filesystem::path>& labels_path = std::nullopt);

/// Binary layout, little-endian: "GMG1", u64 n, u64 m, (n+1) x u64 offsets,
/// m x u32 neighbors, u32 label_count, n x u16 labels.  m counts neighbor
/// entries, i.e. twice the undirected edge count.
void save_binary(const Graph& g, const std::filesystem::path& path);
Graph load_binary(const std::filesystem::path& path);

/// Loads either format, sniffing the binary magic.
Graph load_graph(const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& labels_path = std::nullopt,
                 LoadReport* report = nullptr);

/// v in N(u), by binary search over u's slice.  Requires u, v < n.
bool contains_edge(const Graph& g, VertexId u, VertexId v) noexcept;

struct DegreeStats {
  std::uint32_t d_max = 0;
  double d_avg = 0.0;
};

/// Recomputes degree statistics from the offsets array.
DegreeStats degree_stats(const Graph& g) noexcept;

}  // namespace lanematch
