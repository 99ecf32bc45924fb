#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "opportune/road_graph.hpp"
#include "test_helpers.hpp"

using namespace opportune;

namespace {

// Exhaustive simple-path search; the independent oracle shortest_path is
// checked against. Returns (length, lexicographically smallest sequence among
// minimum-length paths).
struct BruteResult {
  bool reachable = false;
  double length = 0.0;
  std::vector<VertexId> vertices;
};

void brute_dfs(const RoadGraph& g, VertexId u, VertexId dst, std::vector<VertexId>& path,
               std::vector<bool>& used, double len, BruteResult& best) {
  if (u == dst) {
    const bool better =
        !best.reachable || len < best.length - 1e-12 ||
        (std::abs(len - best.length) <= 1e-12 && path < best.vertices);
    if (better) best = {true, len, path};
    return;
  }
  for (const auto& e : g.neighbors(u)) {
    if (used[e.to]) continue;
    used[e.to] = true;
    path.push_back(e.to);
    brute_dfs(g, e.to, dst, path, used, len + e.length, best);
    path.pop_back();
    used[e.to] = false;
  }
}

BruteResult brute_shortest(const RoadGraph& g, VertexId src, VertexId dst) {
  BruteResult best;
  std::vector<VertexId> path{src};
  std::vector<bool> used(g.vertex_count(), false);
  used[src] = true;
  brute_dfs(g, src, dst, path, used, 0.0, best);
  return best;
}

}  // namespace

TEST_CASE("shared endpoints merge into one vertex") {
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 3 4)\nLINESTRING (3 4, 3 8)"));
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.component_count() == 1);
}

TEST_CASE("single segment") {
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 1 1)"));
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("duplicate segment deduplicates") {
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 1 1)\nLINESTRING (0 0, 1 1)"));
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("reversed duplicate also deduplicates") {
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 1 1)\nLINESTRING (1 1, 0 0)"));
  CHECK(g.edge_count() == 1);
}

TEST_CASE("points within snap tolerance merge") {
  const auto g =
      RoadGraph::build(parse_wkt("LINESTRING (0 0, 1 1)\nLINESTRING (1.0000000001 1, 2 2)"), 1e-6);
  CHECK(g.vertex_count() == 3);
}

TEST_CASE("empty map is an error") {
  CHECK_THROWS_AS(RoadGraph::build({}), MapError);
}

TEST_CASE("edge lengths are Euclidean within 1e-9 relative") {
  Rng rng(7);
  const auto g = test_helpers::random_graph(rng, 30, 40);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (const auto& e : g.neighbors(v)) {
      const double d = distance(g.vertex(v), g.vertex(e.to));
      CHECK(std::abs(e.length - d) <= 1e-9 * std::max(1.0, d));
      CHECK(e.length > 0.0);
      CHECK(e.to != v);  // no self-loops
    }
  }
}

TEST_CASE("triangle tie breaks to lexicographically smallest path") {
  // A-B: 1, B-C: 1, A-C: 3 (colinear integer coordinates keep sums exact)
  const auto g = RoadGraph::build(
      parse_wkt("LINESTRING (0 0, 1 0)\nLINESTRING (1 0, 2 0)\nLINESTRING (0 0, 2 0)"));
  // vertices: 0=(0,0) 1=(1,0) 2=(2,0); direct edge 0-2 has length 2 == via-1
  const auto path = g.shortest_path(0, 2);
  REQUIRE(path.has_value());
  CHECK(path->length == doctest::Approx(2.0));
  CHECK(path->vertices == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("src equals dst") {
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 1 1)"));
  const auto path = g.shortest_path(0, 0);
  REQUIRE(path.has_value());
  CHECK(path->length == 0.0);
  CHECK(path->vertices == std::vector<VertexId>{0});
}

TEST_CASE("disconnected components are unreachable") {
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 1 0)\nLINESTRING (100 100, 101 100)"));
  CHECK(g.component_count() == 2);
  CHECK(!g.shortest_path(0, 2).has_value());
}

TEST_CASE("shortest_path equals exhaustive enumeration on random small graphs") {
  Rng rng(12345);
  for (int iter = 0; iter < 100; ++iter) {
    const auto n = static_cast<std::uint32_t>(2 + rng.uniform_index(7));  // <= 8 vertices
    const auto g = test_helpers::random_graph(rng, n, static_cast<std::uint32_t>(rng.uniform_index(8)));
    const auto src = static_cast<VertexId>(rng.uniform_index(g.vertex_count()));
    const auto dst = static_cast<VertexId>(rng.uniform_index(g.vertex_count()));
    const auto got = g.shortest_path(src, dst);
    const auto want = brute_shortest(g, src, dst);
    REQUIRE(got.has_value() == want.reachable);
    if (want.reachable) {
      CHECK(got->length == doctest::Approx(want.length).epsilon(1e-12));
      CHECK(got->vertices == want.vertices);
    }
  }
}

TEST_CASE("path symmetry and triangle inequality on sampled triples") {
  Rng rng(99);
  const auto g = test_helpers::random_graph(rng, 25, 30);
  for (int iter = 0; iter < 40; ++iter) {
    const auto a = static_cast<VertexId>(rng.uniform_index(g.vertex_count()));
    const auto b = static_cast<VertexId>(rng.uniform_index(g.vertex_count()));
    const auto c = static_cast<VertexId>(rng.uniform_index(g.vertex_count()));
    const auto ab = g.shortest_path(a, b);
    const auto ba = g.shortest_path(b, a);
    REQUIRE(ab.has_value() == ba.has_value());
    if (ab) CHECK(ab->length == doctest::Approx(ba->length).epsilon(1e-12));
    const auto ac = g.shortest_path(a, c);
    const auto bc = g.shortest_path(b, c);
    if (ab && bc && ac) CHECK(ac->length <= ab->length + bc->length + 1e-9);
  }
}

TEST_CASE("nearest vertex: exact hit and tie rule") {
  // vertices 0..3 at x = 0, 10, 20, 30
  const auto g = RoadGraph::build(parse_wkt("LINESTRING (0 0, 10 0, 20 0, 30 0)"));
  CHECK(g.nearest_vertex({20, 0}) == 2);
  CHECK(g.nearest_vertex({15, 0}) == 1);   // equidistant from 1 and 2: smallest id
  CHECK(g.nearest_vertex({-5, 3}) == 0);
}

TEST_CASE("largest component selection") {
  const auto g = RoadGraph::build(
      parse_wkt("LINESTRING (0 0, 1 0, 2 0)\nLINESTRING (50 50, 51 50)"));
  const auto members = g.component_vertices(g.largest_component());
  CHECK(members.size() == 3);
  CHECK(std::is_sorted(members.begin(), members.end()));
}
