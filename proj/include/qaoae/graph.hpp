#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qaoae {

enum class GraphKind { kLinear, kRegular3, kComplete };

struct Edge {
  int i = 0;
  int j = 0;      // i < j, no self loops
  double w = 1.0; // >= 0
};

// Weighted undirected MaxCut instance. The cost of a spin configuration
// s in {+1,-1}^N is C(s) = sum_{(i,j,w)} w * s_i * s_j; minimizing C
// maximizes the total weight of cut edges.
struct Graph {
  int n_vertices = 0;
  std::vector<Edge> edges;
  GraphKind kind = GraphKind::kLinear;
};

// Chain 0-1-...-(n-1), open ends, i.i.d. uniform [0,1] weights.
Graph gen_linear(int n, std::uint64_t seed);

// Simple connected 3-regular graph with unit weights, sampled by the
// pairing (configuration) model; non-simple or disconnected pairings are
// rejected and resampled. Requires n even, n >= 4.
Graph gen_regular3(int n, std::uint64_t seed);

// All-to-all graph with i.i.d. uniform [0,1] weights.
Graph gen_complete(int n, std::uint64_t seed);

// Throws std::invalid_argument if the type invariants for g.kind are
// violated (edge counts, degrees, weight ranges, duplicate edges).
void validate(const Graph& g);

// Mean unweighted (hop count) shortest-path length over unordered vertex
// pairs, by BFS from every vertex. Throws std::runtime_error if g is
// disconnected.
double avg_shortest_path(const Graph& g);

using SpinConfig = std::vector<std::int8_t>; // entries +1 / -1

double cut_cost(const Graph& g, const SpinConfig& s);

struct BruteForceResult {
  double min_cost = 0.0;
  std::vector<SpinConfig> argmin; // all minimizers; closed under global flip
};

// Exhaustive scan over all 2^N spin configurations. Guarded to N <= 30.
BruteForceResult maxcut_bruteforce(const Graph& g);

std::string graph_kind_name(GraphKind kind);
GraphKind graph_kind_from_name(const std::string& name);

// {"n": int, "kind": string, "edges": [[i, j, w], ...]}
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace qaoae
