// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "lanematch/match.hpp"
#include "lanematch/ordering.hpp"

namespace testutil {

/// Owns everything a SearchContext points to.
struct Instance {
  Instance(lanematch::Graph g, lanematch::QueryGraph q,
           lanematch::CandidateFilter::Mode mode = lanematch::CandidateFilter::Mode::kLabel)
      : data(std::move(g)),
        query(std::move(q)),
        order(lanematch::generate_order(query)),
        filter(query, order, data, mode),
        ctx{data, query, order, filter} {}

  Instance(lanematch::Graph g, lanematch::QueryGraph q, std::vector<lanematch::VertexId> phi,
           lanematch::CandidateFilter::Mode mode = lanematch::CandidateFilter::Mode::kLabel)
      : data(std::move(g)),
        query(std::move(q)),
        order(lanematch::make_order(query, std::move(phi))),
        filter(query, order, data, mode),
        ctx{data, query, order, filter} {}

  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;

  lanematch::Graph data;
  lanematch::QueryGraph query;
  lanematch::MatchingOrder order;
  lanematch::CandidateFilter filter;
  lanematch::SearchContext ctx;
};

inline lanematch::Graph complete_graph(std::size_t n) {
  std::vector<lanematch::Edge> edges;
  for (lanematch::VertexId u = 0; u < n; ++u) {
    for (lanematch::VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return lanematch::Graph::from_edges(n, edges);
}

}  // namespace testutil
