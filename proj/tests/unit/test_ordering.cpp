// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "lanematch/generators.hpp"
#include "lanematch/ordering.hpp"
#include "test_util.hpp"

using namespace lanematch;

TEST_CASE("triangle order") {
  const MatchingOrder o = generate_order(triangle_pattern());
  CHECK(o.phi == std::vector<VertexId>{0, 1, 2});
  CHECK(o.backward == std::vector<std::vector<std::uint32_t>>{{}, {0}, {0, 1}});
  CHECK(o.is_backward(2, 0));
  CHECK(o.is_backward(2, 1));
  CHECK_FALSE(o.is_backward(1, 1));
}

TEST_CASE("star order starts at the center") {
  const Edge edges[] = {{3, 0}, {3, 1}, {3, 2}};
  const QueryGraph q = make_query(4, edges);
  const MatchingOrder o = generate_order(q);
  CHECK(o.phi[0] == 3);
  for (std::size_t i = 1; i < 4; ++i) CHECK(o.backward[i] == std::vector<std::uint32_t>{0});
  for (std::size_t i = 0; i < 4; ++i) CHECK(o.position[o.phi[i]] == i);
}

TEST_CASE("greatest constraint first with degree tie-break") {
  // 0-1, 1-2, 2-3, 3-0, 0-2, 2-4: degrees 3,2,4,2,1.
  const Edge edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 4}};
  const MatchingOrder o = generate_order(make_query(5, edges));
  // 2 first; 0 has the highest degree among neighbors; then 1 and 3 both
  // have two ordered neighbors and equal degree, so the smaller id wins.
  CHECK(o.phi == std::vector<VertexId>{2, 0, 1, 3, 4});
}

TEST_CASE("validate_order on a path") {
  const Edge edges[] = {{0, 1}, {1, 2}};
  const QueryGraph path = make_query(3, edges);
  const VertexId bad[] = {0, 2, 1};
  const auto v = validate_order(path, bad);
  REQUIRE(v.has_value());
  CHECK(v->position == 1);
  const VertexId good[] = {0, 1, 2};
  CHECK_FALSE(validate_order(path, good).has_value());
  const VertexId repeated[] = {0, 1, 1};
  CHECK(validate_order(path, repeated)->position == 2);
  const VertexId short_phi[] = {1, 0};
  CHECK(validate_order(path, short_phi)->position == 2);
  CHECK_THROWS_AS(make_order(path, {0, 2, 1}), QueryError);
}

TEST_CASE("generated orders always validate") {
  const Graph data = rmat({.n = 1024, .m = 5000}, 4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const QueryGraph q = random_query(data, 12, seed);
    const MatchingOrder o = generate_order(q);
    REQUIRE_FALSE(validate_order(q, o.phi).has_value());
    for (std::size_t i = 1; i < o.size(); ++i) {
      REQUIRE_FALSE(o.backward[i].empty());
      for (auto j : o.backward[i]) {
        REQUIRE(j < i);
        REQUIRE(q.adjacent(o.phi[j], o.phi[i]));
      }
    }
    REQUIRE(generate_order(q).phi == o.phi);
  }
}

TEST_CASE("order files") {
  testutil::TempDir dir;
  const auto phi = load_order_file(dir.write("o.txt", "1 0\n2\n"));
  CHECK(phi == std::vector<VertexId>{1, 0, 2});
  const MatchingOrder o = make_order(triangle_pattern(), phi);
  CHECK(o.backward[2] == std::vector<std::uint32_t>{0, 1});
}
