// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lanematch/ordering.hpp"

namespace lanematch {

/// Per-position admissibility bitmap consulted by both engines' feasibility
/// checks.  kLabel admits v for u iff L(v) = L(u); kLabelDegree additionally
/// requires d(v) >= d(u).  Both are sound for non-induced matching.
class CandidateFilter {
 public:
  enum class Mode { kLabel, kLabelDegree };

  CandidateFilter(const QueryGraph& q, const MatchingOrder& order, const Graph& g, Mode mode);

  bool admits(std::size_t position, VertexId v) const noexcept {
    return (bits_[position * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  Mode mode() const noexcept { return mode_; }
  std::uint64_t admitted(std::size_t position) const noexcept { return counts_[position]; }
  std::uint64_t bytes() const noexcept { return bits_.size() * sizeof(std::uint64_t); }

 private:
  Mode mode_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace lanematch
