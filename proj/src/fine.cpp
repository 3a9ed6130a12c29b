// SPDX-License-Identifier: Apache-2.0
#include "lanematch/fine.hpp"

#include <algorithm>

namespace lanematch {

ExecStack::ExecStack(std::size_t levels, std::size_t width)
    : levels_(levels), width_(width), entries_(levels * width), cursors_(levels) {
  if (width == 0 || width > kMaxLaneWidth) {
    throw ConfigError("lane width must be in [1, " + std::to_string(kMaxLaneWidth) + "]");
  }
}

std::uint64_t ExecStack::remaining_tasks(std::size_t level) const noexcept {
  const LevelCursor& c = cursor(level);
  if (c.lane >= width_) return 0;
  const auto& current = at(level, c.lane);
  std::uint64_t total = current.length > c.offset ? current.length - c.offset : 0;
  for (std::size_t lane = c.lane + 1; lane < width_; ++lane) total += at(level, lane).length;
  return total;
}

void ExecStack::reconstruct(std::size_t level, std::size_t lane,
                            std::span<VertexId> out) const noexcept {
  for (std::size_t l = level + 1; l-- > 0;) {
    const StackEntry& e = at(l, lane);
    out[l] = e.v;
    lane = e.pid;
  }
}

void init_stack(ExecStack& stack, std::span<const VertexId> seed) {
  std::fill_n(&stack.at(0, 0), stack.levels() * stack.width(), StackEntry{});
  for (std::size_t l = 0; l < stack.levels(); ++l) stack.cursor(l) = LevelCursor{};
  for (std::size_t i = 0; i < seed.size(); ++i) {
    StackEntry& e = stack.at(i, 0);
    e.v = seed[i];
    e.feasible = true;
    e.pid = 0;
  }
}

void generate_task(ExecStack& stack, const SearchContext& ctx, std::size_t level, std::size_t lane) {
  StackEntry& entry = stack.at(level, lane);
  entry.begin = 0;
  entry.length = 0;
  entry.owner = 0;
  if (!stack.at(level - 1, lane).feasible) return;

  bool chosen = false;
  VertexId best = 0;
  std::uint32_t best_degree = 0;
  std::size_t pid = lane;
  for (std::size_t i = level; i-- > 0;) {
    const StackEntry& parent = stack.at(i, pid);
    const VertexId v = parent.v;
    pid = parent.pid;
    if (!ctx.order.is_backward(level, i)) continue;
    // Running minimum; the first backward neighbor seen always seeds it, and
    // `<=` while walking upward hands ties to the shallowest position.
    const std::uint32_t d = ctx.data.degree(v);
    if (!chosen || d <= best_degree) {
      chosen = true;
      best = v;
      best_degree = d;
    }
  }
  entry.owner = best;
  entry.begin = ctx.data.offsets()[best];
  entry.length = best_degree;
}

std::size_t scatter_task(ExecStack& stack, const Graph& data, std::size_t level) {
  // k restarts at 0 every round, so a round with k = 0 means the level is done.
  const std::size_t width = stack.width();
  const auto adjacency = data.adjacency();
  LevelCursor& c = stack.cursor(level);
  std::size_t k = 0;
  while (c.lane < width) {
    const StackEntry& source = stack.at(level, c.lane);
    while (c.offset < source.length) {
      StackEntry& slot = stack.at(level, k);
      slot.v = adjacency[source.begin + c.offset];
      slot.pid = static_cast<std::uint16_t>(c.lane);
      ++c.offset;
      if (++k == width) return k;
    }
    ++c.lane;
    c.offset = 0;
  }
  return k;
}

bool process_task(ExecStack& stack, const SearchContext& ctx, std::size_t level, std::size_t k,
                  std::size_t lane) {
  StackEntry& entry = stack.at(level, lane);
  // Lanes at or beyond k received no task this round.
  if (lane >= k || !ctx.filter.admits(level, entry.v)) {
    entry.feasible = false;
    return false;
  }
  const VertexId v = entry.v;
  std::size_t pid = entry.pid;
  for (std::size_t i = level; i-- > 0;) {
    const StackEntry& parent = stack.at(i, pid);
    pid = parent.pid;
    if (v == parent.v ||
        (ctx.order.is_backward(level, i) && !contains_edge(ctx.data, parent.v, v))) {
      entry.feasible = false;
      return false;
    }
  }
  entry.feasible = true;
  return true;
}

std::uint64_t stack_bytes_fine(std::uint64_t query_vertices, std::uint64_t width,
                               std::uint64_t entry_bytes) noexcept {
  return query_vertices * width * entry_bytes;
}

std::optional<SplitResult> split_stack(ExecStack& victim, std::size_t base_level,
                                       std::size_t deepest_level, ExecStack& thief) {
  for (std::size_t s = base_level; s <= deepest_level && s < victim.levels(); ++s) {
    if (!victim.cursor(s).live) continue;
    const std::uint64_t remaining = victim.remaining_tasks(s);
    if (remaining < 2) continue;

    const std::uint64_t keep = remaining - remaining / 2;
    std::uint32_t lane = victim.cursor(s).lane;
    std::uint64_t offset = victim.cursor(s).offset;
    std::uint64_t left = keep;
    while (true) {
      const std::uint64_t length = victim.at(s, lane).length;
      const std::uint64_t avail = length > offset ? length - offset : 0;
      if (avail >= left) {
        offset += left;
        break;
      }
      left -= avail;
      ++lane;
      offset = 0;
    }

    thief = victim;
    for (std::size_t l = 0; l < thief.levels(); ++l) thief.cursor(l).live = false;
    thief.cursor(s) = LevelCursor{lane, static_cast<std::uint32_t>(offset), true};

    victim.at(s, lane).length = static_cast<std::uint32_t>(offset);
    for (std::size_t later = lane + 1; later < victim.width(); ++later) victim.at(s, later).length = 0;
    return SplitResult{s, keep, remaining - keep};
  }
  return std::nullopt;
}

FineWorker::FineWorker(const SearchContext& ctx, std::size_t width, EventLog& events,
                       MatchSink* sink, DescentHook* hook, const std::atomic<bool>* stop)
    : ctx_(ctx),
      width_(width),
      events_(events),
      sink_(sink),
      hook_(hook),
      stop_(stop),
      stack_(ctx.order.size(), width),
      scratch_(ctx.order.size()) {}

std::uint64_t FineWorker::run(std::span<const VertexId> seed) {
  const std::uint64_t before = matches_;
  if (seed.size() == ctx_.order.size()) {
    ++matches_;
    if (sink_ != nullptr) sink_->emit(seed);
    return 1;
  }
  init_stack(stack_, seed);
  base_level_ = seed.size();
  search(base_level_);
  return matches_ - before;
}

std::uint64_t FineWorker::resume(const ExecStack& stolen, std::size_t level) {
  const std::uint64_t before = matches_;
  stack_ = stolen;
  base_level_ = level;
  explore(level);
  return matches_ - before;
}

void FineWorker::search(std::size_t level) {
  for (std::size_t lane = 0; lane < width_; ++lane) generate_task(stack_, ctx_, level, lane);
  stack_.cursor(level) = LevelCursor{0, 0, true};
  explore(level);
}

void FineWorker::explore(std::size_t level) {
  const bool last = level + 1 == ctx_.order.size();
  const std::uint64_t group = ++group_;
  const auto lvl = static_cast<std::uint8_t>(level);
  while (true) {
    if (stop_ != nullptr && stop_->load(std::memory_order_relaxed)) break;
    const std::size_t k = scatter_task(stack_, ctx_.data, level);
    if (k == 0) break;
    events_.record(lvl, group, static_cast<std::uint16_t>(k));

    bool any = false;
    for (std::size_t lane = 0; lane < width_; ++lane) {
      any |= process_task(stack_, ctx_, level, k, lane);
    }
    if (last) {
      for (std::size_t lane = 0; lane < k; ++lane) {
        if (!stack_.at(level, lane).feasible) continue;
        ++matches_;
        if (sink_ != nullptr) {
          stack_.reconstruct(level, lane, scratch_);
          sink_->emit(scratch_);
        }
      }
    } else if (any) {  // ballot over the F flags
      if (hook_ != nullptr) hook_->on_descent(*this, level);
      search(level + 1);
    }
  }
  stack_.cursor(level).live = false;
}

}  // namespace lanematch
