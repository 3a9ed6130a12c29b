// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mutex>
#include <ostream>
#include <span>
#include <vector>

#include "lanematch/filter.hpp"

namespace lanematch {

/// Everything an engine reads while searching.  All members are immutable for
/// the duration of a run and shared by every worker.
struct SearchContext {
  const Graph& data;
  const QueryGraph& query;
  const MatchingOrder& order;
  const CandidateFilter& filter;
};

/// Data vertices mapped to the first `depth` order positions.
struct PartialMatch {
  std::vector<VertexId> mapped;

  std::size_t depth() const noexcept { return mapped.size(); }
  friend bool operator==(const PartialMatch&, const PartialMatch&) = default;
};

/// Receives complete matches, data vertices indexed by order position.
/// Implementations must be safe to call from several workers at once.
class MatchSink {
 public:
  virtual ~MatchSink() = default;
  virtual void emit(std::span<const VertexId> by_position) = 0;
};

class MatchCollector final : public MatchSink {
 public:
  void emit(std::span<const VertexId> by_position) override {
    std::lock_guard lock(mutex_);
    matches_.emplace_back(by_position.begin(), by_position.end());
  }
  /// Not synchronized; call after the run has joined.
  std::vector<std::vector<VertexId>>& matches() noexcept { return matches_; }

 private:
  std::mutex mutex_;
  std::vector<std::vector<VertexId>> matches_;
};

/// One match per line: `u→v` pairs in order-position order, query vertex ids
/// on the left, external data vertex ids on the right.
class MatchWriter final : public MatchSink {
 public:
  MatchWriter(std::ostream& out, const MatchingOrder& order, const Graph& data)
      : out_(out), order_(order), data_(data) {}

  void emit(std::span<const VertexId> by_position) override {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < by_position.size(); ++i) {
      if (i > 0) out_ << ' ';
      out_ << order_.phi[i] << "\xE2\x86\x92" << data_.external_id(by_position[i]);
    }
    out_ << '\n';
  }

 private:
  std::mutex mutex_;
  std::ostream& out_;
  const MatchingOrder& order_;
  const Graph& data_;
};

/// Reorders a by-position match into a by-query-vertex mapping.
inline std::vector<VertexId> to_query_order(const MatchingOrder& order,
                                            std::span<const VertexId> by_position) {
  std::vector<VertexId> out(by_position.size());
  for (std::size_t i = 0; i < by_position.size(); ++i) out[order.phi[i]] = by_position[i];
  return out;
}

}  // namespace lanematch
