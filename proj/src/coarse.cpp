// SPDX-License-Identifier: Apache-2.0
#include "lanematch/coarse.hpp"

#include <algorithm>

namespace lanematch {

namespace {

// Shared by process(), BFS and the DFS worker.  Calls `emit(v)` for every
// feasible candidate and returns the local candidate set size.
template <typename Emit>
std::uint64_t extend(const SearchContext& ctx, std::span<const VertexId> mapped, std::size_t level,
                     LocalCandidateRule rule, Emit&& emit) {
  const std::size_t source = local_candidate_position(ctx, mapped, level, rule);
  const auto candidates = ctx.data.neighbors(mapped[source]);
  const auto& backward = ctx.order.backward[level];
  for (VertexId v : candidates) {
    if (!ctx.filter.admits(level, v)) continue;
    // Unmapped check scans M, as the coarse model has nothing better.
    if (std::find(mapped.begin(), mapped.end(), v) != mapped.end()) continue;
    bool feasible = true;
    for (auto b : backward) {
      if (b != source && !contains_edge(ctx.data, mapped[b], v)) {
        feasible = false;
        break;
      }
    }
    if (feasible) emit(v);
  }
  return candidates.size();
}

void check_deadline(const BfsOptions& options) {
  if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
    throw TimeoutError("deadline reached while building the initial pool");
  }
}

}  // namespace

std::size_t local_candidate_position(const SearchContext& ctx, std::span<const VertexId> mapped,
                                     std::size_t level, LocalCandidateRule rule) {
  const auto& backward = ctx.order.backward[level];
  std::size_t best = backward.front();
  if (rule == LocalCandidateRule::kFirstBackward) return best;
  std::uint32_t best_degree = ctx.data.degree(mapped[best]);
  for (std::size_t i = 1; i < backward.size(); ++i) {
    const std::uint32_t d = ctx.data.degree(mapped[backward[i]]);
    if (d < best_degree) {
      best = backward[i];
      best_degree = d;
    }
  }
  return best;
}

std::vector<VertexId> process(const SearchContext& ctx, std::span<const VertexId> mapped,
                              std::size_t level, LocalCandidateRule rule) {
  std::vector<VertexId> out;
  extend(ctx, mapped.first(level), level, rule, [&](VertexId v) { out.push_back(v); });
  return out;
}

BfsResult bfs_search(const SearchContext& ctx, const BfsOptions& options) {
  const std::size_t n = ctx.order.size();
  const Graph& g = ctx.data;
  BfsResult result;

  auto guard = [&](std::size_t depth, std::size_t entries) {
    if (entries * sizeof(VertexId) > options.memory_cap_bytes) {
      const std::uint64_t items = depth == 0 ? 0 : entries / depth;
      throw MemoryCapError("initial pool exceeds the memory cap at level " + std::to_string(depth) +
                               " with " + std::to_string(items) +
                               " partial matches; lower tau or raise the memory budget",
                           depth, items);
    }
  };

  if (n == 1) {
    result.depth = 1;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (ctx.filter.admits(0, v)) result.flat.push_back(v);
    }
  } else {
    result.depth = 2;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (!ctx.filter.admits(0, v)) continue;
      for (VertexId w : g.neighbors(v)) {
        if (!ctx.filter.admits(1, w)) continue;
        result.flat.push_back(v);
        result.flat.push_back(w);
      }
      guard(2, result.flat.size());
    }
  }

  std::vector<VertexId> next;
  while (true) {
    if (result.depth == n || result.flat.empty()) {
      result.complete = true;
      return result;
    }
    if (options.tau && result.size() >= *options.tau) return result;
    check_deadline(options);

    const std::size_t depth = result.depth;
    next.clear();
    const std::uint64_t items = result.size();
    for (std::uint64_t i = 0; i < items; ++i) {
      const auto parent = result.item(i);
      extend(ctx, parent, depth, options.rule, [&](VertexId v) {
        next.insert(next.end(), parent.begin(), parent.end());
        next.push_back(v);
      });
      if ((i & 1023) == 1023) {
        guard(depth + 1, next.size());
        check_deadline(options);
      }
    }
    guard(depth + 1, next.size());
    result.flat.swap(next);
    result.depth = depth + 1;
  }
}

CoarseStackBytes stack_bytes_coarse(std::uint64_t query_vertices, std::uint64_t d_max,
                                    std::uint64_t sigma, std::uint64_t id_bytes) {
  const std::uint64_t slots = query_vertices * d_max * sigma;
  return {slots * id_bytes, slots * sizeof(std::uint32_t)};
}

CoarseWorker::CoarseWorker(const SearchContext& ctx, unsigned sigma, unsigned width,
                           LocalCandidateRule rule, EventLog& events, MatchSink* sink,
                           const std::atomic<bool>* stop)
    : ctx_(ctx),
      sigma_(sigma),
      width_(width),
      rule_(rule),
      events_(events),
      sink_(sink),
      stop_(stop),
      frames_(ctx.order.size()),
      scratch_(ctx.order.size()) {
  if (sigma == 0) throw ConfigError("unroll factor must be positive");
  if (width == 0) throw ConfigError("lane width must be positive");
  // Fixed-capacity buffers, sized for the worst case up front.
  const std::size_t capacity = static_cast<std::size_t>(ctx.data.d_max()) * sigma;
  for (auto& frame : frames_) frame.reserve(capacity);
}

std::uint64_t CoarseWorker::dfs_search(std::span<const VertexId> seed) {
  const std::size_t n = ctx_.order.size();
  const std::uint64_t before = matches_;
  if (seed.size() == n) {
    ++matches_;
    if (sink_ != nullptr) sink_->emit(seed);
    return 1;
  }
  for (std::size_t i = 0; i < seed.size(); ++i) {
    frames_[i].clear();
    frames_[i].push_back({seed[i], 0});
  }
  descend(seed.size());
  return matches_ - before;
}

void CoarseWorker::descend(std::size_t level) {
  const std::size_t n = ctx_.order.size();
  const auto& parents = frames_[level - 1];
  auto& children = frames_[level];
  const std::span<const VertexId> prefix(scratch_.data(), level);

  for (std::size_t start = 0; start < parents.size(); start += sigma_) {
    if (stop_ != nullptr && stop_->load(std::memory_order_relaxed)) return;
    const std::size_t end = std::min<std::size_t>(start + sigma_, parents.size());
    children.clear();
    std::uint64_t tasks = 0;
    for (std::size_t p = start; p < end; ++p) {
      reconstruct(level - 1, static_cast<std::uint32_t>(p));
      tasks += extend(ctx_, prefix, level, rule_, [&](VertexId v) {
        children.push_back({v, static_cast<std::uint32_t>(p)});
      });
    }
    ++group_;
    log_rounds(level, tasks);

    if (level + 1 == n) {
      matches_ += children.size();
      if (sink_ != nullptr) {
        for (std::size_t c = 0; c < children.size(); ++c) {
          reconstruct(level, static_cast<std::uint32_t>(c));
          sink_->emit(scratch_);
        }
      }
    } else if (!children.empty()) {
      descend(level + 1);
    }
  }
}

void CoarseWorker::reconstruct(std::size_t level, std::uint32_t index) {
  for (std::size_t l = level + 1; l-- > 0;) {
    const Slot& slot = frames_[l][index];
    scratch_[l] = slot.v;
    index = slot.parent;
  }
}

void CoarseWorker::log_rounds(std::size_t level, std::uint64_t tasks) {
  const auto lvl = static_cast<std::uint8_t>(level);
  for (std::uint64_t full = tasks / width_; full > 0; --full) {
    events_.record(lvl, group_, static_cast<std::uint16_t>(width_));
  }
  if (const auto tail = tasks % width_; tail != 0) {
    events_.record(lvl, group_, static_cast<std::uint16_t>(tail));
  }
}

}  // namespace lanematch
