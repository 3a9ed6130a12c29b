// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "lanematch/coarse.hpp"
#include "lanematch/fine.hpp"

namespace lanematch {

/// Fixed-depth partial matches handed out by a shared fetch-and-increment
/// counter.  Each item is dispensed exactly once across all callers.
class TaskPool {
 public:
  TaskPool() = default;
  TaskPool(std::vector<VertexId> flat, std::size_t depth);
  explicit TaskPool(BfsResult bfs) : TaskPool(std::move(bfs.flat), bfs.depth) {}

  std::size_t depth() const noexcept { return depth_; }
  std::uint64_t size() const noexcept { return size_; }
  std::span<const VertexId> item(std::uint64_t i) const noexcept {
    return {flat_.data() + i * depth_, depth_};
  }

  /// Index of the next undispensed item, or nullopt once the pool is drained.
  std::optional<std::uint64_t> fetch_index() noexcept;
  std::optional<std::span<const VertexId>> fetch() noexcept;

  void reset() noexcept { next_.store(0, std::memory_order_relaxed); }
  bool exhausted() const noexcept { return next_.load(std::memory_order_acquire) >= size_; }
  std::uint64_t bytes() const noexcept { return flat_.size() * sizeof(VertexId); }

 private:
  std::vector<VertexId> flat_;
  std::size_t depth_ = 0;
  std::uint64_t size_ = 0;
  std::atomic<std::uint64_t> next_{0};
};

/// Either the pool for the parallel phase or, when expansion reached full
/// depth first, the complete matches themselves.
struct InitialPool {
  std::unique_ptr<TaskPool> pool;
  std::optional<BfsResult> complete;
  double seconds = 0.0;
};

/// Expands level by level until a level holds at least `tau` partial matches.
InitialPool build_initial_pool(const SearchContext& ctx, std::uint64_t tau,
                               std::uint64_t memory_cap_bytes,
                               std::optional<std::chrono::steady_clock::time_point> deadline = {});

enum class WorkerStatus : std::uint8_t { kBusy, kIdle, kHandedOff };

/// Idle queue, per-worker status and the active-worker count used for
/// stealing and termination.
///
/// A victim that hands work to a thief counts the thief as active before it
/// publishes the hand-off, so active_count reaches zero only when every worker
/// is idle and no hand-off is in flight.
class StealBoard {
 public:
  StealBoard(std::size_t workers, std::size_t levels, std::size_t width);

  std::size_t workers() const noexcept { return status_.size(); }

  /// Enqueues `worker`, marks it idle and drops it from the active count.
  void report_idle(std::size_t worker);

  enum class Poll { kWork, kWait, kTerminate };
  /// One non-blocking look at the worker's status.  kWork means a stack is
  /// waiting in inbox(worker) at handed_level(worker) and the worker is busy
  /// again.
  Poll poll(std::size_t worker) noexcept;

  /// Polls with bounded backoff until work arrives or the run terminates.
  bool wait_for_work(std::size_t worker, const std::atomic<bool>* stop = nullptr);

  /// Dequeues an idle worker, if any.
  std::optional<std::size_t> take_idle();
  void requeue(std::size_t worker);
  bool has_idle() const noexcept { return queued_.load(std::memory_order_relaxed) > 0; }

  ExecStack& inbox(std::size_t worker) noexcept { return inbox_[worker]; }
  std::size_t handed_level(std::size_t worker) const noexcept { return level_[worker]; }

  /// Publishes inbox(thief) to the thief; call after filling the inbox.
  void hand_off(std::size_t thief, std::size_t level);

  std::int64_t active_count() const noexcept { return active_.load(std::memory_order_seq_cst); }
  WorkerStatus status(std::size_t worker) const noexcept {
    return status_[worker].load(std::memory_order_acquire);
  }

 private:
  std::mutex mutex_;
  std::deque<std::size_t> queue_;
  std::atomic<std::size_t> queued_{0};
  std::vector<std::atomic<WorkerStatus>> status_;
  std::vector<ExecStack> inbox_;
  std::vector<std::size_t> level_;
  std::atomic<std::int64_t> active_;
};

/// Victim side of stealing: at each descent, if a worker is idle, split the
/// caller's stack and hand the second half over.  Returns true on a hand-off.
bool try_offer_split(StealBoard& board, FineWorker& victim, std::size_t level);

struct ParallelConfig {
  EngineKind engine = EngineKind::kFine;
  std::size_t workers = 1;
  std::size_t lane_width = 32;
  unsigned sigma = 1;
  bool steal = true;
  LocalCandidateRule rule = LocalCandidateRule::kFewestNeighbors;
  bool keep_events = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct WorkerStats {
  double busy_seconds = 0.0;       // thread CPU time spent searching
  double busy_wall_seconds = 0.0;  // wall time spent searching
  std::uint64_t matches = 0;
  std::uint64_t pool_items = 0;
  std::uint64_t steals_received = 0;
  std::uint64_t splits_given = 0;
  std::uint64_t batch_rounds = 0;
};

struct ParallelResult {
  std::uint64_t matches = 0;
  std::vector<WorkerStats> workers;
  EventLog events{EngineKind::kFine, 32};
  std::uint64_t steals = 0;
  bool timed_out = false;
  double seconds = 0.0;
};

/// Drains `pool` with config.workers threads.  The coarse engine only shares
/// the pool counter; the fine engine also steals when config.steal is set.
ParallelResult run_parallel(const SearchContext& ctx, TaskPool& pool, const ParallelConfig& config,
                            MatchSink* sink = nullptr);

}  // namespace lanematch
