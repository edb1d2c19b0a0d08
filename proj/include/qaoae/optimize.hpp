#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qaoae/simulator.hpp"

namespace qaoae {

struct OptimizationResult {
  QaoaAngles angles;
  double cost = 0.0;
  int n_iterations = 0;
  int restart_index = 0;
  bool converged = false;
};

struct MinimizeOptions {
  int max_iterations = 200;
  double grad_tol = 1e-6;      // terminate when ||grad|| drops below
  double cost_rel_tol = 1e-10; // or when the relative cost change does
};

// Initial angles for one restart: per layer, beta ~ U[0, pi) then
// gamma ~ U[0, 2 pi), deterministic in seed.
QaoaAngles sample_initial_angles(int p, std::uint64_t seed);

// Central finite differences of the cost expectation, step 1e-6 per
// coordinate, packed as [betas..., gammas...]; 4p circuit evaluations.
Eigen::VectorXd qaoa_gradient(const DiagonalCost& cost, const QaoaAngles& angles);
Eigen::VectorXd qaoa_gradient(const Graph& g, const QaoaAngles& angles);

// BFGS with backtracking line search (Armijo constant 1e-4, halving) over
// the unbounded 2p-dimensional angle space. Returns the best visited
// point; converged=false only when the iteration budget ran out first.
OptimizationResult minimize_single(const DiagonalCost& cost, const QaoaAngles& init,
                                   const MinimizeOptions& options = {});
OptimizationResult minimize_single(const Graph& g, const QaoaAngles& init,
                                   const MinimizeOptions& options = {});

// Independent minimize_single runs from sample_initial_angles draws with
// per-restart seeds split_seed(seed, r); keeps the lowest cost, ties
// broken by lowest restart index. Deterministic for fixed seed regardless
// of thread count.
OptimizationResult minimize_multistart(const Graph& g, int p, int restarts,
                                       std::uint64_t seed,
                                       const MinimizeOptions& options = {},
                                       int threads = 1);

}  // namespace qaoae
