#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "edgeavg/graph.hpp"

using namespace edgeavg;

namespace {

// Floyd-Warshall oracle for small graphs.
std::vector<std::vector<int>> all_pairs_brute(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges()) {
    d[u][v] = 1;
    d[v][u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

void check_adjacency_consistent(const Graph& g) {
  // Every edge appears exactly twice across adjacency lists, no self loops,
  // no parallel edges.
  std::set<std::pair<int, int>> seen;
  std::vector<int> edge_refs(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
    for (const auto* a = g.adjacency_begin(v); a != g.adjacency_end(v); ++a) {
      REQUIRE(a->neighbor != v);
      ++edge_refs[static_cast<std::size_t>(a->edge)];
    }
  }
  for (int refs : edge_refs) CHECK(refs == 2);
  for (const auto& [u, v] : g.edges()) {
    REQUIRE(u != v);
    auto key = std::minmax(u, v);
    CHECK(seen.insert({key.first, key.second}).second);
  }
}

}  // namespace

TEST_CASE("cycle(3) has the expected shape") {
  const Graph g = Graph::cycle(3);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  for (std::int64_t v = 0; v < 3; ++v) CHECK(g.degree(v) == 2);
  check_adjacency_consistent(g);
}

TEST_CASE("torus(100,100) is 4-regular with 20000 edges") {
  const Graph g = Graph::torus(100, 100);
  CHECK(g.vertex_count() == 10000);
  CHECK(g.edge_count() == 20000);
  for (std::int64_t v : {0L, 5050L, 9999L}) CHECK(g.degree(v) == 4);
}

TEST_CASE("construction minimums are enforced") {
  CHECK_THROWS_WITH_AS(Graph::cycle(2), "cycle requires n >= 3", std::invalid_argument);
  CHECK_THROWS_AS(Graph::path(1), std::invalid_argument);
  CHECK_THROWS_AS(Graph::torus(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(Graph::torus(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(Graph::complete(1), std::invalid_argument);
  CHECK_THROWS_AS(Graph::lattice_window_1d(0), std::invalid_argument);
}

TEST_CASE("every constructor yields a consistent graph") {
  for (const Graph& g : {Graph::cycle(7), Graph::path(5), Graph::torus(3, 4),
                         Graph::complete(6), Graph::lattice_window_1d(3),
                         Graph::lattice_window_2d(2)}) {
    check_adjacency_consistent(g);
  }
}

TEST_CASE("cycle and torus edge counts and degrees") {
  for (std::int64_t n : {3, 10, 41}) {
    const Graph g = Graph::cycle(n);
    CHECK(g.edge_count() == n);
    for (std::int64_t v = 0; v < n; ++v) CHECK(g.degree(v) == 2);
  }
  const Graph t = Graph::torus(5, 7);
  CHECK(t.edge_count() == 2 * 5 * 7);
  for (std::int64_t v = 0; v < t.vertex_count(); ++v) CHECK(t.degree(v) == 4);
}

TEST_CASE("ball examples") {
  const Graph c10 = Graph::cycle(10);
  CHECK(ball(c10, 0, 1) == VertexSet{0});
  CHECK(ball(c10, 0, 3) == VertexSet{0, 1, 2, 8, 9});
  const Graph p2 = Graph::path(2);
  CHECK(ball(p2, 0, 0).empty());
}

TEST_CASE("ball is monotone in the radius and saturates at the whole graph") {
  const Graph g = Graph::torus(4, 5);
  std::size_t prev = 0;
  for (double r = 0.0; r <= 10.0; r += 0.5) {
    const auto b = ball(g, 7, r);
    CHECK(b.size() >= prev);
    prev = b.size();
  }
  CHECK(prev == static_cast<std::size_t>(g.vertex_count()));
}

TEST_CASE("breadth-first distances agree with Floyd-Warshall on small graphs") {
  for (const Graph& g : {Graph::cycle(13), Graph::path(9), Graph::torus(4, 4),
                         Graph::complete(7), Graph::lattice_window_2d(2)}) {
    REQUIRE(g.vertex_count() <= 50);
    const auto oracle = all_pairs_brute(g);
    for (std::int64_t s = 0; s < g.vertex_count(); ++s) {
      const auto dist = g.distances_from(s);
      for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
        CHECK(dist[static_cast<std::size_t>(v)] ==
              oracle[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]);
      }
    }
  }
}

TEST_CASE("stripe positions follow the documented vertex layout") {
  const Graph c = Graph::cycle(6);
  CHECK(c.stripe_position(4) == 4);
  const Graph t = Graph::torus(4, 3);
  CHECK(t.stripe_position(0) == 0);
  CHECK(t.stripe_position(5) == 1);  // row 1, column 1
  const Graph w = Graph::lattice_window_1d(3);
  CHECK(w.stripe_position(0) == -3);
  CHECK(w.stripe_position(6) == 3);
}
