// SPDX-License-Identifier: Apache-2.0
#include "lanematch/scheduler.hpp"

#include <condition_variable>
#include <exception>
#include <ctime>
#include <thread>

namespace lanematch {

namespace {

using Clock = std::chrono::steady_clock;

double thread_cpu_seconds() noexcept {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

double seconds_since(Clock::time_point start) noexcept {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Accumulates CPU and wall time of one busy stretch into a worker's stats.
class BusyTimer {
 public:
  explicit BusyTimer(WorkerStats& stats)
      : stats_(stats), cpu_(thread_cpu_seconds()), wall_(Clock::now()) {}
  ~BusyTimer() {
    stats_.busy_seconds += thread_cpu_seconds() - cpu_;
    stats_.busy_wall_seconds += seconds_since(wall_);
  }
  BusyTimer(const BusyTimer&) = delete;
  BusyTimer& operator=(const BusyTimer&) = delete;

 private:
  WorkerStats& stats_;
  double cpu_;
  Clock::time_point wall_;
};

class StealHook final : public FineWorker::DescentHook {
 public:
  StealHook(StealBoard* board, WorkerStats& stats) : board_(board), stats_(stats) {}
  void on_descent(FineWorker& worker, std::size_t level) override {
    if (try_offer_split(*board_, worker, level)) ++stats_.splits_given;
  }

 private:
  StealBoard* board_;
  WorkerStats& stats_;
};

}  // namespace

TaskPool::TaskPool(std::vector<VertexId> flat, std::size_t depth)
    : flat_(std::move(flat)), depth_(depth), size_(depth == 0 ? 0 : flat_.size() / depth) {}

std::optional<std::uint64_t> TaskPool::fetch_index() noexcept {
  // Bail out before the increment once drained so the counter stays bounded.
  if (next_.load(std::memory_order_relaxed) >= size_) return std::nullopt;
  const std::uint64_t i = next_.fetch_add(1, std::memory_order_acq_rel);
  if (i >= size_) return std::nullopt;
  return i;
}

std::optional<std::span<const VertexId>> TaskPool::fetch() noexcept {
  if (auto i = fetch_index()) return item(*i);
  return std::nullopt;
}

InitialPool build_initial_pool(const SearchContext& ctx, std::uint64_t tau,
                               std::uint64_t memory_cap_bytes,
                               std::optional<Clock::time_point> deadline) {
  if (tau == 0) throw ConfigError("tau must be at least 1");
  const auto start = Clock::now();
  BfsOptions options;
  options.tau = tau;
  options.memory_cap_bytes = memory_cap_bytes;
  options.deadline = deadline;
  BfsResult bfs = bfs_search(ctx, options);

  InitialPool out;
  if (bfs.complete) {
    out.complete = std::move(bfs);
  } else {
    out.pool = std::make_unique<TaskPool>(std::move(bfs));
  }
  out.seconds = seconds_since(start);
  return out;
}

StealBoard::StealBoard(std::size_t workers, std::size_t levels, std::size_t width)
    : status_(workers),
      inbox_(workers, ExecStack(levels, width)),
      level_(workers, 0),
      active_(static_cast<std::int64_t>(workers)) {
  for (auto& s : status_) s.store(WorkerStatus::kBusy, std::memory_order_relaxed);
}

void StealBoard::report_idle(std::size_t worker) {
  status_[worker].store(WorkerStatus::kIdle, std::memory_order_release);
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(worker);
    queued_.fetch_add(1, std::memory_order_relaxed);
  }
  active_.fetch_sub(1, std::memory_order_seq_cst);
}

StealBoard::Poll StealBoard::poll(std::size_t worker) noexcept {
  if (status_[worker].load(std::memory_order_acquire) == WorkerStatus::kHandedOff) {
    status_[worker].store(WorkerStatus::kBusy, std::memory_order_relaxed);
    return Poll::kWork;
  }
  if (active_.load(std::memory_order_seq_cst) == 0) return Poll::kTerminate;
  return Poll::kWait;
}

bool StealBoard::wait_for_work(std::size_t worker, const std::atomic<bool>* stop) {
  for (unsigned spins = 0;; ++spins) {
    switch (poll(worker)) {
      case Poll::kWork:
        return true;
      case Poll::kTerminate:
        return false;
      case Poll::kWait:
        break;
    }
    if (stop != nullptr && stop->load(std::memory_order_relaxed)) return false;
    if (spins < 64) {
      std::this_thread::yield();
    } else {
      std::this_thread::sleep_for(std::chrono::microseconds(50));
    }
  }
}

std::optional<std::size_t> StealBoard::take_idle() {
  std::lock_guard lock(mutex_);
  if (queue_.empty()) return std::nullopt;
  const std::size_t worker = queue_.front();
  queue_.pop_front();
  queued_.fetch_sub(1, std::memory_order_relaxed);
  return worker;
}

void StealBoard::requeue(std::size_t worker) {
  std::lock_guard lock(mutex_);
  queue_.push_back(worker);
  queued_.fetch_add(1, std::memory_order_relaxed);
}

void StealBoard::hand_off(std::size_t thief, std::size_t level) {
  active_.fetch_add(1, std::memory_order_seq_cst);
  level_[thief] = level;
  status_[thief].store(WorkerStatus::kHandedOff, std::memory_order_release);
}

bool try_offer_split(StealBoard& board, FineWorker& victim, std::size_t level) {
  if (!board.has_idle()) return false;
  const auto thief = board.take_idle();
  if (!thief) return false;
  const auto split = split_stack(victim.stack(), victim.base_level(), level, board.inbox(*thief));
  if (!split) {
    board.requeue(*thief);
    return false;
  }
  board.hand_off(*thief, split->level);
  return true;
}

ParallelResult run_parallel(const SearchContext& ctx, TaskPool& pool, const ParallelConfig& config,
                            MatchSink* sink) {
  if (config.workers == 0) throw ConfigError("at least one worker is required");
  if (config.lane_width == 0 || config.lane_width > kMaxLaneWidth) {
    throw ConfigError("lane width must be in [1, " + std::to_string(kMaxLaneWidth) + "]");
  }
  const auto width = static_cast<std::uint16_t>(config.lane_width);
  const std::size_t n = config.workers;
  const bool steal = config.steal && config.engine == EngineKind::kFine;

  std::vector<WorkerStats> stats(n);
  std::vector<EventLog> logs(n, EventLog(config.engine, width, config.keep_events));
  std::unique_ptr<StealBoard> board;
  if (steal) board = std::make_unique<StealBoard>(n, ctx.order.size(), config.lane_width);

  std::atomic<bool> stop{false};
  std::mutex done_mutex;
  std::condition_variable done_cv;
  std::size_t done = 0;
  std::exception_ptr failure;

  auto fine_body = [&](std::size_t id) {
    WorkerStats& s = stats[id];
    StealHook hook(board.get(), s);
    FineWorker worker(ctx, config.lane_width, logs[id], sink, steal ? &hook : nullptr, &stop);
    while (!stop.load(std::memory_order_relaxed)) {
      if (const auto i = pool.fetch_index()) {
        BusyTimer timer(s);
        worker.run(pool.item(*i));
        ++s.pool_items;
        continue;
      }
      if (!steal) break;
      board->report_idle(id);
      if (!board->wait_for_work(id, &stop)) break;
      BusyTimer timer(s);
      ++s.steals_received;
      worker.resume(board->inbox(id), board->handed_level(id));
    }
    s.matches = worker.matches();
  };

  auto coarse_body = [&](std::size_t id) {
    WorkerStats& s = stats[id];
    CoarseWorker worker(ctx, config.sigma, config.lane_width, config.rule, logs[id], sink, &stop);
    while (!stop.load(std::memory_order_relaxed)) {
      const auto i = pool.fetch_index();
      if (!i) break;
      BusyTimer timer(s);
      worker.dfs_search(pool.item(*i));
      ++s.pool_items;
    }
    s.matches = worker.matches();
  };

  const auto start = Clock::now();
  std::vector<std::thread> threads;
  threads.reserve(n);
  for (std::size_t id = 0; id < n; ++id) {
    threads.emplace_back([&, id] {
      try {
        if (config.engine == EngineKind::kFine) {
          fine_body(id);
        } else {
          coarse_body(id);
        }
      } catch (...) {
        std::lock_guard lock(done_mutex);
        if (!failure) failure = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
      }
      std::lock_guard lock(done_mutex);
      ++done;
      done_cv.notify_all();
    });
  }

  ParallelResult result;
  {
    std::unique_lock lock(done_mutex);
    auto finished = [&] { return done == n; };
    if (config.deadline) {
      if (!done_cv.wait_until(lock, *config.deadline, finished)) {
        result.timed_out = true;
        stop.store(true, std::memory_order_relaxed);
      }
    } else {
      done_cv.wait(lock, finished);
    }
  }
  for (auto& t : threads) t.join();
  result.seconds = seconds_since(start);
  if (failure) std::rethrow_exception(failure);

  result.events = EventLog(config.engine, width, config.keep_events);
  for (std::size_t id = 0; id < n; ++id) {
    stats[id].batch_rounds = logs[id].rounds();
    result.events.merge(logs[id]);
    result.matches += stats[id].matches;
    result.steals += stats[id].steals_received;
  }
  result.workers = std::move(stats);
  return result;
}

}  // namespace lanematch
