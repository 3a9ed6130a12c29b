// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <optional>
#include <span>
#include <vector>

#include "lanematch/match.hpp"
#include "lanematch/metrics.hpp"

namespace lanematch {

/// One lane's state at one level of the execution stack.
///
/// `v`, `pid` and `feasible` describe the task the lane ran in the latest
/// round at this level.  The candidate range describes the task group this
/// lane generated for its child level: the local candidate set of the
/// partial match ending at lane `lane` of level - 1, held as a slice of the
/// data graph's neighbor array rather than a copy.
struct StackEntry {
  EdgeOffset begin = 0;      // C: first neighbor-array offset
  std::uint32_t length = 0;  // C: number of candidates
  VertexId owner = 0;        // C: data vertex whose adjacency C slices
  VertexId v = 0;            // candidate data vertex
  std::uint16_t pid = 0;     // lane of the parent entry one level up
  bool feasible = false;     // F
};

inline constexpr std::size_t kStackEntryBytes = sizeof(StackEntry);
static_assert(kStackEntryBytes == 24, "stack entry layout changed; update reports");

inline constexpr std::size_t kMaxLaneWidth = 64;

/// The two cursors of a level's virtual task pool: the source lane whose
/// candidate range is being scattered and the offset inside that range.
struct LevelCursor {
  std::uint32_t lane = 0;
  std::uint32_t offset = 0;
  bool live = false;
};

/// |V(Q)| x W grid of stack entries plus per-level cursors.  Storage is fixed
/// at construction and independent of the data graph.
class ExecStack {
 public:
  ExecStack() = default;
  ExecStack(std::size_t levels, std::size_t width);

  std::size_t levels() const noexcept { return levels_; }
  std::size_t width() const noexcept { return width_; }

  StackEntry& at(std::size_t level, std::size_t lane) noexcept { return entries_[level * width_ + lane]; }
  const StackEntry& at(std::size_t level, std::size_t lane) const noexcept {
    return entries_[level * width_ + lane];
  }
  LevelCursor& cursor(std::size_t level) noexcept { return cursors_[level]; }
  const LevelCursor& cursor(std::size_t level) const noexcept { return cursors_[level]; }

  /// Tasks of `level` not yet handed to a lane.
  std::uint64_t remaining_tasks(std::size_t level) const noexcept;

  /// Data vertices of the partial match ending at (level, lane), by position.
  void reconstruct(std::size_t level, std::size_t lane, std::span<VertexId> out) const noexcept;

  std::uint64_t bytes() const noexcept { return entries_.size() * kStackEntryBytes; }

 private:
  std::size_t levels_ = 0;
  std::size_t width_ = 0;
  std::vector<StackEntry> entries_;
  std::vector<LevelCursor> cursors_;
};

/// Loads a seed partial match into lane 0 of levels [0, depth); every other
/// lane is marked infeasible and all cursors are reset.
void init_stack(ExecStack& stack, std::span<const VertexId> seed);

/// Sets the candidate range that `lane` contributes to `level`: empty when
/// the parent entry (level - 1, lane) is infeasible, otherwise the adjacency
/// slice of the mapped backward neighbor with the fewest neighbors (ties to
/// the shallowest position), found by walking the parent chain.
void generate_task(ExecStack& stack, const SearchContext& ctx, std::size_t level, std::size_t lane);

/// Leader step: fills lanes [0, k) of `level` with the next tasks from the
/// level's virtual task pool, advancing its cursors, and returns k.
std::size_t scatter_task(ExecStack& stack, const Graph& data, std::size_t level);

/// Feasibility of the task in `lane` after a scatter that produced `k`
/// tasks.  Writes and returns the lane's F flag.  Lanes >= k are inactive.
bool process_task(ExecStack& stack, const SearchContext& ctx, std::size_t level, std::size_t k,
                  std::size_t lane);

/// Closed-form stack size per worker: |V(Q)| * W * entry_bytes.
std::uint64_t stack_bytes_fine(std::uint64_t query_vertices, std::uint64_t width,
                               std::uint64_t entry_bytes = kStackEntryBytes) noexcept;

struct SplitResult {
  std::size_t level = 0;            // the level whose remaining tasks were halved
  std::uint64_t victim_tasks = 0;   // tasks the victim keeps at that level
  std::uint64_t thief_tasks = 0;    // tasks handed over
};

/// Halves the shallowest live level in [base_level, deepest_level] that still
/// has at least two unscattered tasks.  The thief receives a copy of all
/// shallower levels, the second half of that level's remaining tasks, and no
/// deeper state; the victim keeps the first half.  Returns nullopt and leaves
/// both stacks untouched when no level qualifies.
std::optional<SplitResult> split_stack(ExecStack& victim, std::size_t base_level,
                                       std::size_t deepest_level, ExecStack& thief);

/// One simulated warp of the fine-grained model, executing W lanes per round
/// in lockstep on the calling thread.
class FineWorker {
 public:
  /// Consulted once before each descent to a deeper level; may split this
  /// worker's stack.
  class DescentHook {
   public:
    virtual ~DescentHook() = default;
    virtual void on_descent(FineWorker& worker, std::size_t level) = 0;
  };

  FineWorker(const SearchContext& ctx, std::size_t width, EventLog& events,
             MatchSink* sink = nullptr, DescentHook* hook = nullptr,
             const std::atomic<bool>* stop = nullptr);

  /// Searches every extension of `seed`.  Returns the number of matches.
  std::uint64_t run(std::span<const VertexId> seed);

  /// Adopts a stack produced by split_stack and finishes `level`.
  std::uint64_t resume(const ExecStack& stolen, std::size_t level);

  ExecStack& stack() noexcept { return stack_; }
  std::size_t base_level() const noexcept { return base_level_; }
  std::uint64_t matches() const noexcept { return matches_; }

 private:
  void search(std::size_t level);
  void explore(std::size_t level);

  const SearchContext& ctx_;
  std::size_t width_;
  EventLog& events_;
  MatchSink* sink_;
  DescentHook* hook_;
  const std::atomic<bool>* stop_;
  ExecStack stack_;
  std::vector<VertexId> scratch_;
  std::size_t base_level_ = 0;
  std::uint64_t matches_ = 0;
  std::uint64_t group_ = 0;
};

}  // namespace lanematch
