#include "qaoae/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

#include "qaoae/rng.hpp"

namespace qaoae {

Graph gen_linear(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_linear: need n >= 2");
  SplitMix64 rng(seed);
  Graph g;
  g.n_vertices = n;
  g.kind = GraphKind::kLinear;
  g.edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, rng.uniform()});
  return g;
}

Graph gen_complete(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_complete: need n >= 2");
  SplitMix64 rng(seed);
  Graph g;
  g.n_vertices = n;
  g.kind = GraphKind::kComplete;
  g.edges.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, rng.uniform()});
  return g;
}

namespace {

bool connected(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

}  // namespace

Graph gen_regular3(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("gen_regular3: need even n >= 4");
  SplitMix64 rng(seed);
  std::vector<int> stubs(3 * n);
  for (;;) {
    for (int v = 0; v < n; ++v)
      stubs[3 * v] = stubs[3 * v + 1] = stubs[3 * v + 2] = v;
    for (int i = static_cast<int>(stubs.size()) - 1; i > 0; --i) {
      int j = static_cast<int>(rng.below(i + 1));
      std::swap(stubs[i], stubs[j]);
    }
    std::set<std::pair<int, int>> edge_set;
    bool simple = true;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int a = stubs[k], b = stubs[k + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (!edge_set.insert({std::min(a, b), std::max(a, b)}).second) {
        simple = false;
        break;
      }
    }
    if (!simple) continue;
    Graph g;
    g.n_vertices = n;
    g.kind = GraphKind::kRegular3;
    for (const auto& [a, b] : edge_set) g.edges.push_back({a, b, 1.0});
    if (!connected(n, g.edges)) continue;
    return g;
  }
}

void validate(const Graph& g) {
  const int n = g.n_vertices;
  if (n <= 0) throw std::invalid_argument("graph: empty vertex set");
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(n, 0);
  for (const auto& e : g.edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
      throw std::invalid_argument("graph: vertex index out of range");
    if (e.i == e.j) throw std::invalid_argument("graph: self loop");
    if (e.i >= e.j) throw std::invalid_argument("graph: edges must have i < j");
    if (!seen.insert({e.i, e.j}).second)
      throw std::invalid_argument("graph: duplicate edge");
    if (e.w < 0.0) throw std::invalid_argument("graph: negative weight");
    ++degree[e.i];
    ++degree[e.j];
  }
  const auto n_edges = static_cast<int>(g.edges.size());
  switch (g.kind) {
    case GraphKind::kLinear:
      if (n_edges != n - 1) throw std::invalid_argument("linear: edge count");
      for (int i = 0; i + 1 < n; ++i)
        if (g.edges[i].i != i || g.edges[i].j != i + 1)
          throw std::invalid_argument("linear: not a chain");
      for (const auto& e : g.edges)
        if (e.w > 1.0) throw std::invalid_argument("linear: weight > 1");
      break;
    case GraphKind::kComplete:
      if (n_edges != n * (n - 1) / 2)
        throw std::invalid_argument("complete: edge count");
      for (const auto& e : g.edges)
        if (e.w > 1.0) throw std::invalid_argument("complete: weight > 1");
      break;
    case GraphKind::kRegular3:
      if (n % 2 != 0 || n < 4)
        throw std::invalid_argument("regular3: need even n >= 4");
      for (int v = 0; v < n; ++v)
        if (degree[v] != 3) throw std::invalid_argument("regular3: degree != 3");
      for (const auto& e : g.edges)
        if (e.w != 1.0) throw std::invalid_argument("regular3: weight != 1");
      break;
  }
}

double avg_shortest_path(const Graph& g) {
  const int n = g.n_vertices;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  long long total = 0;
  std::vector<int> dist(n);
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    std::queue<int> q;
    q.push(src);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0)
        throw std::runtime_error("avg_shortest_path: graph is disconnected");
      total += dist[v];
    }
  }
  // each unordered pair counted twice
  return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

double cut_cost(const Graph& g, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != g.n_vertices)
    throw std::invalid_argument("cut_cost: configuration length mismatch");
  double c = 0.0;
  for (const auto& e : g.edges) c += e.w * s[e.i] * s[e.j];
  return c;
}

BruteForceResult maxcut_bruteforce(const Graph& g) {
  const int n = g.n_vertices;
  if (n > 30) throw std::invalid_argument("maxcut_bruteforce: N > 30");
  const std::uint64_t dim = 1ULL << n;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> argmin_bits;
  for (std::uint64_t b = 0; b < dim; ++b) {
    double c = 0.0;
    for (const auto& e : g.edges) {
      const int zi = ((b >> e.i) & 1) ? -1 : 1;
      const int zj = ((b >> e.j) & 1) ? -1 : 1;
      c += e.w * zi * zj;
    }
    if (c < best) {
      best = c;
      argmin_bits.clear();
      argmin_bits.push_back(b);
    } else if (c == best) {
      argmin_bits.push_back(b);
    }
  }
  BruteForceResult result;
  result.min_cost = best;
  for (std::uint64_t b : argmin_bits) {
    SpinConfig s(n);
    for (int q = 0; q < n; ++q) s[q] = ((b >> q) & 1) ? -1 : 1;
    result.argmin.push_back(std::move(s));
  }
  return result;
}

std::string graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kLinear: return "linear";
    case GraphKind::kRegular3: return "regular3";
    case GraphKind::kComplete: return "complete";
  }
  throw std::invalid_argument("graph_kind_name: bad kind");
}

GraphKind graph_kind_from_name(const std::string& name) {
  if (name == "linear") return GraphKind::kLinear;
  if (name == "regular3") return GraphKind::kRegular3;
  if (name == "complete") return GraphKind::kComplete;
  throw std::invalid_argument("unknown graph kind: " + name);
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.i, e.j, e.w});
  return {{"n", g.n_vertices}, {"kind", graph_kind_name(g.kind)}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  Graph g;
  g.n_vertices = j.at("n").get<int>();
  g.kind = graph_kind_from_name(j.at("kind").get<std::string>());
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
  validate(g);
  return g;
}

}  // namespace qaoae
