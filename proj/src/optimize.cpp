#include "qaoae/optimize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qaoae/parallel.hpp"
#include "qaoae/rng.hpp"

namespace qaoae {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;

QaoaAngles unpack(const Eigen::VectorXd& x) {
  const Eigen::Index p = x.size() / 2;
  QaoaAngles angles;
  angles.betas = x.head(p);
  angles.gammas = x.tail(p);
  return angles;
}

Eigen::VectorXd pack(const QaoaAngles& angles) {
  Eigen::VectorXd x(2 * angles.depth());
  x.head(angles.depth()) = angles.betas;
  x.tail(angles.depth()) = angles.gammas;
  return x;
}

double evaluate(const DiagonalCost& cost, const Eigen::VectorXd& x) {
  return cost_expectation(run_qaoa(cost, unpack(x)), cost);
}

Eigen::VectorXd fd_gradient(const DiagonalCost& cost, const Eigen::VectorXd& x) {
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + kFdStep;
    const double up = evaluate(cost, probe);
    probe[k] = x[k] - kFdStep;
    const double down = evaluate(cost, probe);
    probe[k] = x[k];
    grad[k] = (up - down) / (2.0 * kFdStep);
  }
  return grad;
}

}  // namespace

QaoaAngles sample_initial_angles(int p, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("sample_initial_angles: need p >= 1");
  SplitMix64 rng(seed);
  QaoaAngles angles;
  angles.betas.resize(p);
  angles.gammas.resize(p);
  for (int l = 0; l < p; ++l) {
    angles.betas[l] = std::numbers::pi * rng.uniform();
    angles.gammas[l] = 2.0 * std::numbers::pi * rng.uniform();
  }
  return angles;
}

Eigen::VectorXd qaoa_gradient(const DiagonalCost& cost, const QaoaAngles& angles) {
  return fd_gradient(cost, pack(angles));
}

Eigen::VectorXd qaoa_gradient(const Graph& g, const QaoaAngles& angles) {
  return qaoa_gradient(build_cost_diagonal(g), angles);
}

OptimizationResult minimize_single(const DiagonalCost& cost, const QaoaAngles& init,
                                   const MinimizeOptions& options) {
  const Eigen::Index dim = 2 * init.depth();
  Eigen::VectorXd x = pack(init);
  double fx = evaluate(cost, x);
  Eigen::VectorXd grad = fd_gradient(cost, x);

  OptimizationResult result;
  result.angles = init;
  result.cost = fx;

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(dim, dim);
  int iter = 0;
  bool converged = false;
  while (iter < options.max_iterations) {
    if (grad.norm() < options.grad_tol) {
      converged = true;
      break;
    }
    ++iter;
    Eigen::VectorXd direction = -(inv_hessian * grad);
    double slope = direction.dot(grad);
    if (!(slope < 0.0)) {  // lost positive definiteness; restart on steepest descent
      inv_hessian.setIdentity();
      direction = -grad;
      slope = direction.dot(grad);
    }
    double step = 1.0;
    double f_new = fx;
    for (;;) {
      f_new = evaluate(cost, x + step * direction);
      if (f_new <= fx + kArmijo * step * slope) break;
      step *= 0.5;
      if (step < kMinStep) break;
    }
    if (step < kMinStep) {
      converged = true;  // no admissible descent step left
      break;
    }
    const Eigen::VectorXd x_new = x + step * direction;
    const Eigen::VectorXd grad_new = fd_gradient(cost, x_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left =
          Eigen::MatrixXd::Identity(dim, dim) - rho * s * y.transpose();
      inv_hessian = left * inv_hessian * left.transpose() +
                    rho * s * s.transpose();
    }
    const double improvement = fx - f_new;
    x = x_new;
    grad = grad_new;
    fx = f_new;
    if (fx < result.cost) {
      result.cost = fx;
      result.angles = unpack(x);
    }
    if (improvement <= options.cost_rel_tol * std::max(1.0, std::abs(fx))) {
      converged = true;
      break;
    }
  }
  result.n_iterations = iter;
  result.converged = converged;
  return result;
}

OptimizationResult minimize_single(const Graph& g, const QaoaAngles& init,
                                   const MinimizeOptions& options) {
  return minimize_single(build_cost_diagonal(g), init, options);
}

OptimizationResult minimize_multistart(const Graph& g, int p, int restarts,
                                       std::uint64_t seed,
                                       const MinimizeOptions& options, int threads) {
  if (restarts < 1)
    throw std::invalid_argument("minimize_multistart: need restarts >= 1");
  const DiagonalCost cost = build_cost_diagonal(g);
  std::vector<OptimizationResult> results(restarts);
  parallel_for(restarts, threads, [&](int r) {
    const QaoaAngles init = sample_initial_angles(p, split_seed(seed, r));
    results[r] = minimize_single(cost, init, options);
    results[r].restart_index = r;
  });
  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[r].cost < results[best].cost) best = r;
  return results[best];
}

}  // namespace qaoae
