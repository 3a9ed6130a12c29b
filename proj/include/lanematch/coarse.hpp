// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lanematch/match.hpp"
#include "lanematch/metrics.hpp"

namespace lanematch {

/// Which mapped backward neighbor supplies the local candidate set.
enum class LocalCandidateRule {
  kFewestNeighbors,  // smallest adjacency slice, ties to the shallowest position
  kFirstBackward,    // always the first backward neighbor in order
};

/// Order position whose mapped vertex's adjacency is the local candidate set
/// for extending `mapped` at `level`.
std::size_t local_candidate_position(const SearchContext& ctx, std::span<const VertexId> mapped,
                                     std::size_t level, LocalCandidateRule rule);

/// Feasible candidates for order position `level` given a valid partial match
/// of depth `level`: members of the local candidate set that pass the filter,
/// are unmapped, and are adjacent to every other mapped backward neighbor.
std::vector<VertexId> process(const SearchContext& ctx, std::span<const VertexId> mapped,
                              std::size_t level,
                              LocalCandidateRule rule = LocalCandidateRule::kFewestNeighbors);

struct BfsOptions {
  /// Stop after the first completed level holding at least this many partial
  /// matches; nullopt expands to complete matches.
  std::optional<std::uint64_t> tau;
  std::uint64_t memory_cap_bytes = std::numeric_limits<std::uint64_t>::max();
  LocalCandidateRule rule = LocalCandidateRule::kFewestNeighbors;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Uniform-depth frontier produced by level-synchronous expansion.  When
/// `complete` is set every item is a full match.
struct BfsResult {
  std::vector<VertexId> flat;  // item i occupies [i * depth, (i + 1) * depth)
  std::size_t depth = 0;
  bool complete = false;

  std::uint64_t size() const noexcept { return depth == 0 ? 0 : flat.size() / depth; }
  std::span<const VertexId> item(std::size_t i) const noexcept {
    return {flat.data() + i * depth, depth};
  }
};

/// Level-synchronous BFS expansion.  The seed level maps the first two order positions to
/// every label-consistent ordered data edge (both orientations); a one-vertex
/// query seeds with every admissible vertex.  Throws MemoryCapError when a
/// level would exceed the cap and TimeoutError past the deadline.
BfsResult bfs_search(const SearchContext& ctx, const BfsOptions& options = {});

struct CoarseStackBytes {
  std::uint64_t candidates = 0;  // |V(Q)| * d_max * sigma * id_bytes
  std::uint64_t overhead = 0;    // parent indices kept beside each candidate
};

CoarseStackBytes stack_bytes_coarse(std::uint64_t query_vertices, std::uint64_t d_max,
                                    std::uint64_t sigma, std::uint64_t id_bytes = sizeof(VertexId));

/// One simulated warp of the coarse-grained model: depth-first extension of a
/// seed partial match, with the loop over children unrolled by sigma.
///
/// Each level keeps a buffer of feasible candidates (capacity d_max * sigma,
/// allocated once).  A step pops up to sigma buffered matches, computes their
/// children into the next level's buffer and logs ceil(T / W) rounds, T being
/// the summed local-candidate-set sizes of the popped matches.
class CoarseWorker {
 public:
  CoarseWorker(const SearchContext& ctx, unsigned sigma, unsigned width, LocalCandidateRule rule,
               EventLog& events, MatchSink* sink = nullptr,
               const std::atomic<bool>* stop = nullptr);

  /// Extends `seed` to all complete matches; returns how many were found.
  std::uint64_t dfs_search(std::span<const VertexId> seed);

  std::uint64_t matches() const noexcept { return matches_; }

 private:
  struct Slot {
    VertexId v;
    std::uint32_t parent;  // index into the previous level's buffer
  };

  void descend(std::size_t level);
  void reconstruct(std::size_t level, std::uint32_t index);
  void log_rounds(std::size_t level, std::uint64_t tasks);

  const SearchContext& ctx_;
  unsigned sigma_;
  unsigned width_;
  LocalCandidateRule rule_;
  EventLog& events_;
  MatchSink* sink_;
  const std::atomic<bool>* stop_;
  std::vector<std::vector<Slot>> frames_;
  std::vector<VertexId> scratch_;
  std::uint64_t matches_ = 0;
  std::uint64_t group_ = 0;
};

}  // namespace lanematch
