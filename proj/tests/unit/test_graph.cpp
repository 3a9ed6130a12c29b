// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lanematch/generators.hpp"
#include "lanematch/graph.hpp"
#include "lanematch/rng.hpp"
#include "test_util.hpp"

using namespace lanematch;

namespace {

Graph parse(const std::string& edges, const std::string* labels = nullptr, LoadReport* rep = nullptr) {
  std::istringstream e(edges);
  if (labels == nullptr) return parse_text(e, nullptr, rep);
  std::istringstream l(*labels);
  return parse_text(e, &l, rep);
}

void check_csr_invariants(const Graph& g) {
  const auto off = g.offsets();
  REQUIRE(off.size() == g.num_vertices() + 1);
  CHECK(off.front() == 0);
  CHECK(off.back() == g.adjacency().size());
  std::uint32_t d_max = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    REQUIRE(off[v] <= off[v + 1]);
    const auto nb = g.neighbors(v);
    d_max = std::max<std::uint32_t>(d_max, static_cast<std::uint32_t>(nb.size()));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      REQUIRE(nb[i] != v);
      if (i > 0) REQUIRE(nb[i - 1] < nb[i]);
      const auto back = g.neighbors(nb[i]);
      REQUIRE(std::binary_search(back.begin(), back.end(), v));
    }
  }
  CHECK(g.d_max() == d_max);
}

}  // namespace

TEST_CASE("duplicates and self-loops are dropped") {
  LoadReport rep;
  const Graph g = parse("0 1\n1 0\n1 1\n1 2\n", nullptr, &rep);
  REQUIRE(g.num_vertices() == 3);
  const auto nb = g.neighbors(1);
  CHECK(std::vector<VertexId>(nb.begin(), nb.end()) == std::vector<VertexId>{0, 2});
  CHECK(g.num_edges() == 2);
  CHECK(rep.self_loops_dropped == 1);
  CHECK(rep.duplicate_edges_dropped == 1);
  CHECK(rep.edge_lines == 4);
  check_csr_invariants(g);
}

TEST_CASE("empty input gives the empty graph") {
  const Graph g = parse("");
  CHECK(g.num_vertices() == 0);
  CHECK(g.num_edges() == 0);
  CHECK(g.d_max() == 0);
  const Graph only_comments = parse("# just a comment\n\n");
  CHECK(only_comments.num_vertices() == 0);
}

TEST_CASE("labeled 3-path") {
  const std::string labels = "0 0\n1 1\n2 0\n";
  const Graph g = parse("0 1\n1 2\n", &labels);
  CHECK(std::vector<LabelId>(g.labels().begin(), g.labels().end()) == std::vector<LabelId>{0, 1, 0});
  CHECK(g.label_count() == 2);
  CHECK(g.d_max() == 2);
  CHECK(g.d_avg() == doctest::Approx(4.0 / 3.0));
  const auto stats = degree_stats(g);
  CHECK(stats.d_max == 2);
  CHECK(stats.d_avg == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("unlabeled graphs have one label") {
  const Graph g = parse("0 1\n");
  CHECK(g.label_count() == 1);
  CHECK(g.label(0) == 0);
}

TEST_CASE("malformed lines report their line number") {
  try {
    parse("0 1\n# ok\n1 2 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("0 x\n"), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
  const std::string bad_label = "0 A\n";
  CHECK_THROWS_AS(parse("0 1\n", &bad_label), ParseError);
}

TEST_CASE("node header fixes n and range-checks ids") {
  const Graph g = parse("# Nodes: 5 Edges: 1\n0 1\n");
  CHECK(g.num_vertices() == 5);
  CHECK(g.degree(4) == 0);
  CHECK_THROWS_AS(parse("# Nodes: 2\n0 2\n"), RangeError);
}

TEST_CASE("sparse ids are remapped in ascending order") {
  LoadReport rep;
  const Graph g = parse("10 30\n30 20\n", nullptr, &rep);
  CHECK(rep.remapped);
  REQUIRE(g.num_vertices() == 3);
  CHECK(g.external_id(0) == 10);
  CHECK(g.external_id(1) == 20);
  CHECK(g.external_id(2) == 30);
  CHECK(contains_edge(g, 0, 2));
  CHECK(contains_edge(g, 1, 2));
  CHECK_FALSE(contains_edge(g, 0, 1));
}

TEST_CASE("contains_edge on a path") {
  const Graph g = parse("0 1\n1 2\n");
  CHECK_FALSE(contains_edge(g, 0, 2));
  CHECK(contains_edge(g, 1, 0));
  CHECK(contains_edge(g, 0, 1));
}

TEST_CASE("contains_edge agrees with an adjacency matrix") {
  const std::size_t n = 64;
  Rng rng(7);
  std::vector<std::vector<bool>> matrix(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.unit() < 0.2) {
        matrix[u][v] = matrix[v][u] = true;
        edges.emplace_back(u, v);
      }
    }
  }
  const Graph g = Graph::from_edges(n, edges);
  check_csr_invariants(g);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      REQUIRE(contains_edge(g, u, v) == matrix[u][v]);
      REQUIRE(contains_edge(g, u, v) == contains_edge(g, v, u));
    }
  }
}

TEST_CASE("degree statistics") {
  const Graph k15 = star(6);
  CHECK(k15.d_max() == 5);
  CHECK(k15.d_avg() == doctest::Approx(10.0 / 6.0));
  const Graph single = Graph::from_edges(1, {});
  CHECK(single.d_max() == 0);
  CHECK(single.d_avg() == 0.0);
  CHECK(degree_stats(single).d_avg == 0.0);

  const Graph g = rmat({.n = 4096, .m = 20000}, 3);
  std::uint64_t total = 0;
  std::uint32_t max = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    total += g.neighbors(v).size();
    max = std::max<std::uint32_t>(max, static_cast<std::uint32_t>(g.neighbors(v).size()));
  }
  const auto stats = degree_stats(g);
  CHECK(stats.d_max == max);
  CHECK(stats.d_avg == doctest::Approx(static_cast<double>(total) / 4096.0));
  CHECK(g.d_max() == stats.d_max);
}

TEST_CASE("binary round trip") {
  testutil::TempDir dir;
  const std::string labels = "0 0\n1 1\n2 0\n";
  const Graph path3 = parse("0 1\n1 2\n", &labels);
  save_binary(path3, dir.file("p3.bin"));
  CHECK(load_binary(dir.file("p3.bin")) == path3);
  CHECK(load_graph(dir.file("p3.bin")) == path3);

  const Graph big = rmat({.n = 100000, .m = 400000}, 11);
  save_binary(big, dir.file("big.bin"));
  const Graph back = load_binary(dir.file("big.bin"));
  CHECK(std::equal(back.offsets().begin(), back.offsets().end(), big.offsets().begin(),
                   big.offsets().end()));
  CHECK(std::equal(back.adjacency().begin(), back.adjacency().end(), big.adjacency().begin(),
                   big.adjacency().end()));
}

TEST_CASE("text to binary to graph preserves everything") {
  testutil::TempDir dir;
  const Graph g = rmat({.n = 2000, .m = 8000}, 5).with_labels(std::vector<LabelId>(2000, 3), 4);
  save_text(g, dir.file("g.txt"), dir.file("g.labels"));
  const Graph text = load_text(dir.file("g.txt"), dir.file("g.labels"));
  CHECK(text.offsets().size() == g.offsets().size());
  CHECK(std::equal(text.adjacency().begin(), text.adjacency().end(), g.adjacency().begin(),
                   g.adjacency().end()));
  CHECK(std::equal(text.labels().begin(), text.labels().end(), g.labels().begin(), g.labels().end()));
  save_binary(text, dir.file("g.bin"));
  CHECK(load_binary(dir.file("g.bin")) == text);
}

TEST_CASE("corrupt binaries are rejected") {
  testutil::TempDir dir;
  save_binary(star(4), dir.file("s.bin"));
  {
    std::fstream f(dir.file("s.bin"), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
  }
  CHECK_THROWS_AS(load_binary(dir.file("s.bin")), FormatError);

  save_binary(star(4), dir.file("t.bin"));
  std::filesystem::resize_file(dir.file("t.bin"), std::filesystem::file_size(dir.file("t.bin")) - 3);
  CHECK_THROWS_AS(load_binary(dir.file("t.bin")), FormatError);
}

TEST_CASE("from_csr rejects broken invariants") {
  CHECK_NOTHROW(Graph::from_csr({0, 1, 2}, {1, 0}, {0, 0}, 1));
  CHECK_THROWS_AS(Graph::from_csr({0, 1, 1}, {1}, {0, 0}, 1), FormatError);     // asymmetric
  CHECK_THROWS_AS(Graph::from_csr({0, 1, 2}, {0, 0}, {0, 0}, 1), FormatError);  // self-loop
  CHECK_THROWS_AS(Graph::from_csr({0, 1, 2}, {1, 0}, {0, 5}, 2), FormatError);  // label range
}
