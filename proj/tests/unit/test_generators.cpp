// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "lanematch/generators.hpp"
#include "lanematch/oracle.hpp"

using namespace lanematch;

TEST_CASE("star") {
  const Graph g = star(3201);
  CHECK(g.num_vertices() == 3201);
  CHECK(g.num_edges() == 3200);
  CHECK(g.d_max() == 3200);
  CHECK(g.degree(0) == 3200);
  CHECK(g.degree(17) == 1);
}

TEST_CASE("erdos-renyi extremes and density") {
  CHECK(erdos_renyi(50, 0.0, 1).num_edges() == 0);
  CHECK(erdos_renyi(20, 1.0, 1).num_edges() == 190);
  const Graph g = erdos_renyi(2000, 0.01, 7);
  const double expected = 0.01 * 2000.0 * 1999.0 / 2.0;
  CHECK(std::abs(static_cast<double>(g.num_edges()) - expected) < 0.05 * expected);
  CHECK(erdos_renyi(300, 0.05, 3).num_edges() == erdos_renyi(300, 0.05, 3).num_edges());
}

TEST_CASE("rmat is deterministic and heavy tailed") {
  RmatParams p;
  p.n = 1U << 14;
  p.m = 1U << 17;
  const Graph g = rmat(p, 11);
  CHECK(g.num_vertices() == p.n);
  CHECK(g.num_edges() == p.m);
  std::vector<std::uint32_t> degrees(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) degrees[v] = g.degree(v);
  std::sort(degrees.rbegin(), degrees.rend());
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < degrees.size() / 100; ++i) top += degrees[i];
  // Endpoints of the top 1% of vertices touch well over 10% of the edges.
  CHECK(static_cast<double>(top) / (2.0 * static_cast<double>(g.num_edges())) > 0.10);

  const Graph again = rmat(p, 11);
  CHECK(std::equal(g.adjacency().begin(), g.adjacency().end(), again.adjacency().begin(),
                   again.adjacency().end()));
}

TEST_CASE("rmat handles non-power-of-two sizes") {
  RmatParams p;
  p.n = 300;
  p.m = 900;
  const Graph g = rmat(p, 2);
  CHECK(g.num_vertices() == 300);
  CHECK(g.num_edges() == 900);
}

TEST_CASE("preferential attachment") {
  const Graph g = powerlaw(1000, 3, 9);
  CHECK(g.num_vertices() == 1000);
  // Seed clique of 4 vertices plus 3 edges per later vertex.
  CHECK(g.num_edges() == 6 + 996 * 3);
  CHECK(g.d_max() > 30);
}

TEST_CASE("skewed fixture concentrates matches under the major hub") {
  const Graph g = skewed_fixture(20, 3, 4);
  CHECK(g.num_vertices() == (1 + 1 + 20) + 3 * (1 + 1 + 4));
  const auto total = enumerate_all(skewed_query(), g).count;
  // 20 * 19 * 18 ordered leaf triples at the major hub, 4 * 3 * 2 at each minor hub.
  CHECK(total == 20 * 19 * 18 + 3 * 24);
}

TEST_CASE("pattern shapes") {
  CHECK(triangle_pattern().graph().num_edges() == 3);
  CHECK(cycle4_pattern().graph().num_edges() == 4);
  CHECK(clique4_pattern().graph().num_edges() == 6);
  CHECK(house5_pattern().graph().num_vertices() == 5);
  CHECK(house5_pattern().graph().num_edges() == 6);
}
