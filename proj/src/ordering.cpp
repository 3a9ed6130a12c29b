// SPDX-License-Identifier: Apache-2.0
#include "lanematch/ordering.hpp"

#include <fstream>
#include <tuple>

namespace lanematch {

MatchingOrder generate_order(const QueryGraph& q) {
  const std::size_t n = q.size();
  std::vector<VertexId> phi;
  phi.reserve(n);
  std::vector<char> placed(n, 0);
  std::vector<std::uint32_t> ordered_neighbors(n, 0);

  for (std::size_t step = 0; step < n; ++step) {
    VertexId best = 0;
    bool have = false;
    for (VertexId u = 0; u < n; ++u) {
      if (placed[u]) continue;
      if (step > 0 && ordered_neighbors[u] == 0) continue;
      if (!have) {
        best = u;
        have = true;
        continue;
      }
      // Larger key wins; smaller id wins remaining ties via strict comparison.
      auto key = [&](VertexId x) { return std::make_tuple(ordered_neighbors[x], q.degree(x)); };
      if (key(u) > key(best)) best = u;
    }
    placed[best] = 1;
    phi.push_back(best);
    for (VertexId w : q.graph().neighbors(best)) ++ordered_neighbors[w];
  }
  return make_order(q, std::move(phi));
}

std::optional<OrderViolation> validate_order(const QueryGraph& q, std::span<const VertexId> phi) {
  const std::size_t n = q.size();
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const VertexId u = phi[i];
    if (u >= n) return OrderViolation{i, "vertex " + std::to_string(u) + " is not a query vertex"};
    if (seen[u]) return OrderViolation{i, "vertex " + std::to_string(u) + " appears twice"};
    if (i > 0) {
      bool connected = false;
      for (std::size_t j = 0; j < i && !connected; ++j) connected = q.adjacent(phi[j], u);
      if (!connected) {
        return OrderViolation{i, "vertex " + std::to_string(u) + " has no backward neighbor"};
      }
    }
    seen[u] = 1;
  }
  if (phi.size() != n) {
    return OrderViolation{phi.size(), "order has " + std::to_string(phi.size()) +
                                          " vertices, query has " + std::to_string(n)};
  }
  return std::nullopt;
}

MatchingOrder make_order(const QueryGraph& q, std::vector<VertexId> phi) {
  if (auto violation = validate_order(q, phi)) {
    throw QueryError("invalid matching order at position " + std::to_string(violation->position) +
                     ": " + violation->reason);
  }
  const std::size_t n = phi.size();
  MatchingOrder order;
  order.phi = std::move(phi);
  order.position.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) order.position[order.phi[i]] = static_cast<std::uint32_t>(i);
  order.backward.assign(n, {});
  order.backward_mask.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (q.adjacent(order.phi[j], order.phi[i])) {
        order.backward[i].push_back(static_cast<std::uint32_t>(j));
        order.backward_mask[i] |= std::uint64_t{1} << j;
      }
    }
  }
  return order;
}

std::vector<VertexId> load_order_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<VertexId> phi;
  long long value = 0;
  while (in >> value) {
    if (value < 0) throw QueryError(path.string() + ": negative vertex id in order file");
    phi.push_back(static_cast<VertexId>(value));
  }
  if (!in.eof()) throw QueryError(path.string() + ": order file must hold integers only");
  return phi;
}

}  // namespace lanematch
