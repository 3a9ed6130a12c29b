// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lanematch/query.hpp"

namespace lanematch {

struct OracleOptions {
  std::optional<std::uint64_t> limit;       // stop after this many matches
  std::optional<std::uint64_t> step_limit;  // stop after this many tried assignments
  bool collect = false;                // keep the matches themselves
};

struct OracleResult {
  std::uint64_t count = 0;
  bool partial = false;  // a limit was hit before the search finished
  std::uint64_t steps = 0;
  std::vector<std::vector<VertexId>> matches;  // indexed by query vertex id
};

/// Brute-force enumeration of every injective, label- and edge-preserving
/// map from `q` into `g`.  Query vertices are assigned in ascending id order,
/// each trying all data vertices in ascending id order; nothing but labels
/// prunes the search.  Output order is deterministic.
OracleResult enumerate_all(const QueryGraph& q, const Graph& g, const OracleOptions& options = {});

/// Checks `mapping` (indexed by query vertex id) against the definition of a
/// match.  Returns an empty string when valid, else the first violated clause.
std::string check_embedding(const QueryGraph& q, const Graph& g, std::span<const VertexId> mapping);

inline bool is_embedding(const QueryGraph& q, const Graph& g, std::span<const VertexId> mapping) {
  return check_embedding(q, g, mapping).empty();
}

}  // namespace lanematch
