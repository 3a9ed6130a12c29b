// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lanematch/query.hpp"

namespace lanematch {

/// A connected matching order and its backward-neighbor sets, indexed by
/// order position.
struct MatchingOrder {
  std::vector<VertexId> phi;                          // position -> query vertex
  std::vector<std::uint32_t> position;                // query vertex -> position
  std::vector<std::vector<std::uint32_t>> backward;   // sorted earlier positions
  std::vector<std::uint64_t> backward_mask;           // bit j <=> j in backward[i]

  std::size_t size() const noexcept { return phi.size(); }
  bool is_backward(std::size_t level, std::size_t earlier) const noexcept {
    return (backward_mask[level] >> earlier) & 1U;
  }
};

struct OrderViolation {
  std::size_t position;
  std::string reason;
};

/// Greatest-constraint-first order: start at the highest-degree query vertex
/// (ties: smallest id), then repeatedly take the vertex with the most already
/// ordered neighbors, ties by higher degree, then smaller id.
MatchingOrder generate_order(const QueryGraph& q);

/// First position where `phi` stops being a connected permutation of V(q).
std::optional<OrderViolation> validate_order(const QueryGraph& q, std::span<const VertexId> phi);

/// Builds the order from a user-supplied permutation; throws QueryError when
/// validate_order reports a violation.
MatchingOrder make_order(const QueryGraph& q, std::vector<VertexId> phi);

/// Whitespace-separated query vertex ids.
std::vector<VertexId> load_order_file(const std::filesystem::path& path);

}  // namespace lanematch
