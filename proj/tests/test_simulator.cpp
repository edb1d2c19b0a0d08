#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "qaoae/entanglement.hpp"
#include "qaoae/optimize.hpp"
#include "qaoae/rng.hpp"
#include "qaoae/simulator.hpp"
#include "support/dense_oracle.hpp"

using namespace qaoae;
using std::numbers::pi;

namespace {

Graph single_edge() {
  Graph g;
  g.n_vertices = 2;
  g.kind = GraphKind::kLinear;
  g.edges = {{0, 1, 1.0}};
  return g;
}

Graph unit_triangle() {
  Graph g = gen_complete(3, 0);
  for (auto& e : g.edges) e.w = 1.0;
  return g;
}

StateVector random_state(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  StateVector state;
  state.n_qubits = n;
  state.amps.resize(1LL << n);
  for (auto& a : state.amps)
    a = std::complex<double>(rng.uniform() - 0.5, rng.uniform() - 0.5);
  state.amps.normalize();
  return state;
}

}  // namespace

TEST_CASE("cost diagonal of a single edge and the triangle") {
  const DiagonalCost edge = build_cost_diagonal(single_edge());
  REQUIRE(edge.diag.size() == 4);
  CHECK(edge.diag[0] == 1.0);
  CHECK(edge.diag[1] == -1.0);
  CHECK(edge.diag[2] == -1.0);
  CHECK(edge.diag[3] == 1.0);

  const DiagonalCost tri = build_cost_diagonal(unit_triangle());
  REQUIRE(tri.diag.size() == 8);
  CHECK(tri.diag[0] == 3.0);
  CHECK(tri.diag[7] == 3.0);
  for (int b = 1; b < 7; ++b) CHECK(tri.diag[b] == -1.0);
  // unit weights land on a small lattice, so the level table kicks in
  CHECK(tri.level_values.size() == 2);
}

TEST_CASE("cost diagonal is spin-flip symmetric") {
  const Graph g = gen_complete(6, 9);
  const DiagonalCost cost = build_cost_diagonal(g);
  const int dim = 64;
  for (int b = 0; b < dim; ++b) CHECK(cost.diag[b] == cost.diag[~b & (dim - 1)]);
}

TEST_CASE("init_plus_state") {
  const StateVector one = init_plus_state(1);
  CHECK(std::abs(one.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(one.amps[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
  const StateVector four = init_plus_state(4);
  for (int b = 0; b < 16; ++b) CHECK(std::abs(four.amps[b] - 0.25) < 1e-15);
  // product state: no entanglement across any cut
  const EntanglementSpectrum spec =
      schmidt_spectrum(four, random_bipartition(4, 5));
  CHECK(von_neumann_entropy(spec) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mixer at beta = 0 is the identity") {
  StateVector state = random_state(4, 1);
  const Eigen::VectorXcd before = state.amps;
  apply_mixer(state, 0.0);
  CHECK((state.amps - before).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("mixer at beta = pi flips all bits with phase (-i)^N") {
  const int n = 3;
  StateVector state;
  state.n_qubits = n;
  state.amps = Eigen::VectorXcd::Zero(8);
  state.amps[0] = 1.0;  // |000>
  apply_mixer(state, pi);
  const std::complex<double> expected = std::pow(std::complex<double>(0, -1), n);
  CHECK(std::abs(state.amps[7] - expected) < 1e-12);
  for (int b = 0; b < 7; ++b) CHECK(std::abs(state.amps[b]) < 1e-12);
}

TEST_CASE("mixer matches the dense Kronecker oracle") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const double beta = 4.0 * pi * (rng.uniform() - 0.5);
    StateVector state = random_state(n, rng.next_u64());
    const Eigen::VectorXcd expected =
        oracle::mixer_matrix(n, beta) * state.amps;
    apply_mixer(state, beta);
    CHECK((state.amps - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(state.amps.squaredNorm() - 1.0) < 1e-12);
  }
}

TEST_CASE("phase gate: identity at gamma = 0 and exact values at N = 2") {
  const DiagonalCost cost = build_cost_diagonal(single_edge());
  StateVector state = init_plus_state(2);
  apply_phase(state, 0.0, cost);
  for (int b = 0; b < 4; ++b) CHECK(std::abs(state.amps[b] - 0.5) < 1e-15);

  apply_phase(state, pi, cost);
  // diag = [1,-1,-1,1] -> phases exp(-i pi/2), exp(+i pi/2)
  const std::complex<double> mi(0, -1), pli(0, 1);
  CHECK(std::abs(state.amps[0] - 0.5 * mi) < 1e-12);
  CHECK(std::abs(state.amps[1] - 0.5 * pli) < 1e-12);
  CHECK(std::abs(state.amps[2] - 0.5 * pli) < 1e-12);
  CHECK(std::abs(state.amps[3] - 0.5 * mi) < 1e-12);
}

TEST_CASE("phase gate matches the dense oracle on random input") {
  SplitMix64 rng(78);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const Graph g = gen_complete(n, rng.next_u64());
    const DiagonalCost cost = build_cost_diagonal(g);
    const double gamma = 4.0 * pi * (rng.uniform() - 0.5);
    StateVector state = random_state(n, rng.next_u64());
    const Eigen::VectorXcd expected =
        oracle::phase_matrix(oracle::cost_diagonal(g), gamma) * state.amps;
    apply_phase(state, gamma, cost);
    CHECK((state.amps - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
  StateVector mismatch = init_plus_state(3);
  CHECK_THROWS_AS(apply_phase(mismatch, 1.0, build_cost_diagonal(single_edge())),
                  std::invalid_argument);
}

TEST_CASE("quantized and dense phase paths agree") {
  // same unit-weight graph, with and without the level table
  const Graph g = gen_regular3(8, 4);
  const DiagonalCost fast = build_cost_diagonal(g);
  REQUIRE(!fast.level_index.empty());
  DiagonalCost dense = fast;
  dense.level_index.clear();
  dense.level_values.resize(0);
  StateVector a = random_state(8, 5), b = a;
  apply_phase(a, 0.7331, fast);
  apply_phase(b, 0.7331, dense);
  CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("run_qaoa with p = 0 is the uniform superposition") {
  const StateVector state = run_qaoa(single_edge(), QaoaAngles{});
  for (int b = 0; b < 4; ++b) CHECK(std::abs(state.amps[b] - 0.5) < 1e-15);
}

TEST_CASE("run_qaoa matches the dense oracle at p = 2") {
  SplitMix64 rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const Graph g = trial % 2 ? gen_complete(n, rng.next_u64())
                              : gen_linear(n, rng.next_u64());
    const QaoaAngles angles = sample_initial_angles(2, rng.next_u64());
    const StateVector state = run_qaoa(g, angles);
    CHECK((state.amps - oracle::qaoa_state(g, angles)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(std::abs(state.amps.squaredNorm() - 1.0) < 1e-10);
    CHECK(z2_asymmetry(state) < 1e-10);
  }
}

TEST_CASE("per-edge phase application composes to the full diagonal") {
  const Graph g = gen_complete(5, 31);
  const double gamma = 1.234;
  StateVector full = random_state(5, 6), stepwise = full;
  apply_phase(full, gamma, build_cost_diagonal(g));
  for (const auto& e : g.edges) {
    Graph partial;
    partial.n_vertices = 5;
    partial.kind = GraphKind::kLinear;  // kind irrelevant for the diagonal
    partial.edges = {e};
    apply_phase(stepwise, gamma, build_cost_diagonal(partial));
  }
  CHECK((full.amps - stepwise.amps).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cost_expectation") {
  const Graph g = gen_complete(4, 8);
  const DiagonalCost cost = build_cost_diagonal(g);
  CHECK(cost_expectation(init_plus_state(4), cost) ==
        doctest::Approx(0.0).epsilon(1e-12));

  StateVector basis;
  basis.n_qubits = 4;
  basis.amps = Eigen::VectorXcd::Zero(16);
  basis.amps[9] = 1.0;
  CHECK(cost_expectation(basis, cost) == doctest::Approx(cost.diag[9]));

  const StateVector random = random_state(4, 9);
  CHECK(cost_expectation(random, cost) ==
        doctest::Approx(oracle::cost_expectation(g, random.amps)).epsilon(1e-10));
}

TEST_CASE("annealing schedule values") {
  const QaoaAngles two = annealing_schedule(1.0, 0.5);
  REQUIRE(two.depth() == 2);
  CHECK(two.gammas[0] == doctest::Approx(0.5));
  CHECK(two.gammas[1] == doctest::Approx(1.0));
  CHECK(two.betas[0] == doctest::Approx(-0.5));
  CHECK(two.betas[1] == doctest::Approx(0.0));

  const QaoaAngles hundred = annealing_schedule(10.0, 0.1);
  CHECK(hundred.depth() == 100);
  CHECK(hundred.betas[99] == doctest::Approx(0.0));  // final beta always 0

  CHECK_THROWS_AS(annealing_schedule(-1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(annealing_schedule(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(annealing_schedule(1.0, 0.3), std::invalid_argument);
}

TEST_CASE("annealing starts unentangled and stays normalized") {
  const Graph g = gen_regular3(6, 3);
  int calls = 0;
  run_annealing(g, 2.0, 0.1, [&](double t, const StateVector& state) {
    if (calls == 0) {
      CHECK(t == 0.0);
      const double s = von_neumann_entropy(
          schmidt_spectrum(state, contiguous_bipartition(6)));
      CHECK(s == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(std::abs(state.amps.squaredNorm() - 1.0) < 1e-10);
    ++calls;
  });
  CHECK(calls == 21);
}

TEST_CASE("adiabatic limit reaches the single-edge cat manifold") {
  const Graph g = single_edge();
  const StateVector final_state = run_annealing(g, 50.0, 0.1);
  CHECK(oracle::ground_space_overlap(g, final_state.amps) >= 0.99);
}

TEST_CASE("norm drift stays tiny over one thousand layers") {
  const Graph g = gen_complete(6, 12);
  const DiagonalCost cost = build_cost_diagonal(g);
  StateVector state = init_plus_state(6);
  double previous = 1.0;
  double per_layer = 0.0, total = 0.0;
  for (int l = 1; l <= 1000; ++l) {
    const QaoaAngles draw = sample_initial_angles(1, split_seed(51, l));
    apply_phase(state, draw.gammas[0], cost);
    apply_mixer(state, draw.betas[0]);
    const double norm = state.amps.squaredNorm();
    per_layer = std::max(per_layer, std::abs(norm - previous));
    total = std::max(total, std::abs(norm - 1.0));
    previous = norm;
  }
  CHECK(per_layer < 1e-12);
  CHECK(total < 1e-9);
}

TEST_CASE("inversion symmetry holds along a deep random circuit") {
  const Graph g = gen_regular3(8, 13);
  const DiagonalCost cost = build_cost_diagonal(g);
  StateVector state = init_plus_state(8);
  for (int l = 1; l <= 100; ++l) {
    const QaoaAngles draw = sample_initial_angles(1, split_seed(52, l));
    apply_phase(state, draw.gammas[0], cost);
    apply_mixer(state, draw.betas[0]);
    CHECK(z2_asymmetry(state) < 1e-10);
  }
}

TEST_CASE("light cone on linear graphs bounds the entropy") {
  // one bond crosses the contiguous cut, so S <= 2 p ln 2
  SplitMix64 rng(53);
  for (int p = 1; p <= 3; ++p) {
    for (int trial = 0; trial < 5; ++trial) {
      const Graph g = gen_linear(8, rng.next_u64());
      const QaoaAngles angles = sample_initial_angles(p, rng.next_u64());
      const StateVector state = run_qaoa(g, angles);
      const double s = von_neumann_entropy(
          schmidt_spectrum(state, contiguous_bipartition(8)));
      CHECK(s <= 2.0 * p * std::numbers::ln2 + 1e-9);
    }
  }
}

TEST_CASE("state dump round trip") {
  const StateVector state = random_state(5, 99);
  std::stringstream buffer;
  dump_state(state, buffer);
  const StateVector back = load_state(buffer);
  CHECK(back.n_qubits == 5);
  CHECK((back.amps - state.amps).cwiseAbs().maxCoeff() == 0.0);
}
