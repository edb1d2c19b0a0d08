#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qaoae/graph.hpp"
#include "qaoae/rng.hpp"

using namespace qaoae;

TEST_CASE("gen_linear shapes and weights") {
  const Graph g2 = gen_linear(2, 5);
  REQUIRE(g2.edges.size() == 1);
  CHECK(g2.edges[0].i == 0);
  CHECK(g2.edges[0].j == 1);
  CHECK(g2.edges[0].w >= 0.0);
  CHECK(g2.edges[0].w <= 1.0);

  const Graph g8 = gen_linear(8, 5);
  REQUIRE(g8.edges.size() == 7);
  for (int i = 0; i < 7; ++i) {
    CHECK(g8.edges[i].i == i);
    CHECK(g8.edges[i].j == i + 1);
  }
  validate(g8);

  CHECK_THROWS_AS(gen_linear(1, 0), std::invalid_argument);
}

TEST_CASE("generators are pure functions of (n, seed)") {
  const Graph a = gen_linear(5, 99), b = gen_linear(5, 99);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t k = 0; k < a.edges.size(); ++k)
    CHECK(a.edges[k].w == b.edges[k].w);

  const Graph c = gen_complete(6, 123), d = gen_complete(6, 123);
  for (std::size_t k = 0; k < c.edges.size(); ++k)
    CHECK(c.edges[k].w == d.edges[k].w);

  const Graph e = gen_regular3(10, 7), f = gen_regular3(10, 7);
  REQUIRE(e.edges.size() == f.edges.size());
  for (std::size_t k = 0; k < e.edges.size(); ++k) {
    CHECK(e.edges[k].i == f.edges[k].i);
    CHECK(e.edges[k].j == f.edges[k].j);
  }
}

TEST_CASE("gen_regular3 n=4 is the complete graph K4") {
  const Graph g = gen_regular3(4, 11);
  CHECK(g.edges.size() == 6);
  for (const auto& e : g.edges) CHECK(e.w == 1.0);
  validate(g);
}

TEST_CASE("gen_regular3 n=8 has 12 edges and degree 3 everywhere") {
  const Graph g = gen_regular3(8, 3);
  CHECK(g.edges.size() == 12);
  std::vector<int> degree(8, 0);
  for (const auto& e : g.edges) {
    ++degree[e.i];
    ++degree[e.j];
  }
  for (int v = 0; v < 8; ++v) CHECK(degree[v] == 3);
  CHECK_THROWS_AS(gen_regular3(7, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_regular3(2, 0), std::invalid_argument);
}

TEST_CASE("gen_regular3 samples stay simple and 3-regular") {
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph g = gen_regular3(20, split_seed(4242, trial));
    validate(g);  // checks degrees, duplicates, self loops
  }
}

TEST_CASE("gen_complete shapes") {
  CHECK(gen_complete(3, 0).edges.size() == 3);
  CHECK(gen_complete(8, 0).edges.size() == 28);
  validate(gen_complete(8, 0));
  CHECK_THROWS_AS(gen_complete(1, 0), std::invalid_argument);
}

TEST_CASE("avg_shortest_path") {
  for (int n : {2, 5, 9})
    CHECK(avg_shortest_path(gen_complete(n, 1)) == doctest::Approx(1.0));
  // path 0-1-2-3: distances 1,1,1,2,2,3 over 6 pairs
  CHECK(avg_shortest_path(gen_linear(4, 1)) == doctest::Approx(5.0 / 3.0));

  Graph disconnected;
  disconnected.n_vertices = 4;
  disconnected.kind = GraphKind::kLinear;
  disconnected.edges = {{0, 1, 0.5}, {2, 3, 0.5}};
  CHECK_THROWS_AS(avg_shortest_path(disconnected), std::runtime_error);
}

TEST_CASE("3-regular mean shortest path grows like log N") {
  const int samples = 200;
  auto ensemble_asp = [&](int n) {
    double sum = 0.0;
    for (int t = 0; t < samples; ++t)
      sum += avg_shortest_path(gen_regular3(n, split_seed(1000 + n, t)));
    return sum / samples;
  };
  const double a16 = ensemble_asp(16);
  const double a64 = ensemble_asp(64);
  const double a256 = ensemble_asp(256);
  CHECK(a64 > a16);
  CHECK(a256 > a64);
  // log-growth: equal increments per factor of 4, far from the linear
  // prediction of ratio 4
  const double ratio = (a256 - a64) / (a64 - a16);
  CHECK(ratio > 0.5);
  CHECK(ratio < 1.6);
}

TEST_CASE("maxcut_bruteforce on the unit triangle") {
  Graph k3 = gen_complete(3, 0);
  for (auto& e : k3.edges) e.w = 1.0;
  const BruteForceResult result = maxcut_bruteforce(k3);
  CHECK(result.min_cost == doctest::Approx(-1.0));
  CHECK(result.argmin.size() == 6);  // three cuts x global flip
  for (const auto& s : result.argmin) {
    SpinConfig flipped(s);
    for (auto& v : flipped) v = -v;
    CHECK(std::find(result.argmin.begin(), result.argmin.end(), flipped) !=
          result.argmin.end());
  }
}

TEST_CASE("maxcut_bruteforce on a weighted path") {
  Graph path;
  path.n_vertices = 3;
  path.kind = GraphKind::kLinear;
  path.edges = {{0, 1, 0.5}, {1, 2, 0.8}};
  const BruteForceResult result = maxcut_bruteforce(path);
  CHECK(result.min_cost == doctest::Approx(-1.3));
  REQUIRE(result.argmin.size() == 2);
  const SpinConfig a = {1, -1, 1}, b = {-1, 1, -1};
  CHECK(((result.argmin[0] == a && result.argmin[1] == b) ||
         (result.argmin[0] == b && result.argmin[1] == a)));

  Graph too_big;
  too_big.n_vertices = 31;
  CHECK_THROWS_AS(maxcut_bruteforce(too_big), std::invalid_argument);
}

TEST_CASE("cut cost is invariant under global spin flip") {
  const Graph g = gen_complete(7, 21);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    SpinConfig s(7), flipped(7);
    for (int v = 0; v < 7; ++v) {
      s[v] = rng.below(2) ? 1 : -1;
      flipped[v] = -s[v];
    }
    CHECK(cut_cost(g, s) == doctest::Approx(cut_cost(g, flipped)));
  }
}

TEST_CASE("graph json round trip") {
  const Graph g = gen_regular3(8, 77);
  const Graph back = graph_from_json(graph_to_json(g));
  CHECK(back.n_vertices == g.n_vertices);
  CHECK(back.kind == g.kind);
  REQUIRE(back.edges.size() == g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    CHECK(back.edges[k].i == g.edges[k].i);
    CHECK(back.edges[k].j == g.edges[k].j);
    CHECK(back.edges[k].w == g.edges[k].w);
  }
}
