// SPDX-License-Identifier: Apache-2.0
#include "lanematch/oracle.hpp"

namespace lanematch {

namespace {

class Enumerator {
 public:
  Enumerator(const QueryGraph& q, const Graph& g, const OracleOptions& options, OracleResult& out)
      : q_(q.graph()), g_(g), options_(options), out_(out), mapping_(q_.num_vertices()),
        used_(g.num_vertices(), false) {}

  void run() { assign(0); }

 private:
  bool assign(VertexId u) {
    if (u == q_.num_vertices()) {
      if (options_.limit && out_.count == *options_.limit) {
        out_.partial = true;
        return false;
      }
      ++out_.count;
      if (options_.collect) out_.matches.push_back(mapping_);
      return true;
    }
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (used_[v] || g_.label(v) != q_.label(u)) continue;
      if (options_.step_limit && out_.steps == *options_.step_limit) {
        out_.partial = true;
        return false;
      }
      ++out_.steps;
      if (!consistent(u, v)) continue;
      mapping_[u] = v;
      used_[v] = true;
      const bool go_on = assign(u + 1);
      used_[v] = false;
      if (!go_on) return false;
    }
    return true;
  }

  // Every query edge to an already assigned vertex must exist in the data.
  bool consistent(VertexId u, VertexId v) const {
    for (VertexId w : q_.neighbors(u)) {
      if (w < u && !contains_edge(g_, mapping_[w], v)) return false;
    }
    return true;
  }

  const Graph& q_;
  const Graph& g_;
  const OracleOptions& options_;
  OracleResult& out_;
  std::vector<VertexId> mapping_;
  std::vector<bool> used_;
};

}  // namespace

OracleResult enumerate_all(const QueryGraph& q, const Graph& g, const OracleOptions& options) {
  OracleResult out;
  Enumerator(q, g, options, out).run();
  return out;
}

std::string check_embedding(const QueryGraph& q, const Graph& g, std::span<const VertexId> mapping) {
  const Graph& qg = q.graph();
  if (mapping.size() != qg.num_vertices()) return "mapping does not cover every query vertex";
  for (VertexId u = 0; u < mapping.size(); ++u) {
    if (mapping[u] >= g.num_vertices()) return "query vertex " + std::to_string(u) + " maps outside the data graph";
  }
  for (VertexId a = 0; a < mapping.size(); ++a) {
    for (VertexId b = a + 1; b < mapping.size(); ++b) {
      if (mapping[a] == mapping[b]) {
        return "query vertices " + std::to_string(a) + " and " + std::to_string(b) + " share a data vertex";
      }
    }
  }
  for (VertexId u = 0; u < mapping.size(); ++u) {
    if (qg.label(u) != g.label(mapping[u])) return "label of query vertex " + std::to_string(u) + " differs";
  }
  for (VertexId u = 0; u < mapping.size(); ++u) {
    for (VertexId w : qg.neighbors(u)) {
      // Linear scan on purpose: no shared lookup path with the engines.
      const auto adj = g.neighbors(mapping[u]);
      bool found = false;
      for (VertexId x : adj) found = found || x == mapping[w];
      if (!found) {
        return "query edge (" + std::to_string(u) + ", " + std::to_string(w) + ") is not preserved";
      }
    }
  }
  return {};
}

}  // namespace lanematch
