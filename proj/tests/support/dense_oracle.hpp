// Test-only reference implementations, independent of the library's
// in-place kernels: everything here is assembled from explicit dense
// matrices and index arithmetic.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "qaoae/graph.hpp"
#include "qaoae/simulator.hpp"

namespace oracle {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline const std::complex<double> kI{0.0, 1.0};

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline MatrixXcd rx(double beta) {
  MatrixXcd m(2, 2);
  m << std::cos(beta / 2), -kI * std::sin(beta / 2),
       -kI * std::sin(beta / 2), std::cos(beta / 2);
  return m;
}

// X rotation on every qubit; qubit 0 is the least significant bit, so it
// sits rightmost in the Kronecker chain.
inline MatrixXcd mixer_matrix(int n, double beta) {
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) m = kron(rx(beta), m);
  return m;
}

inline VectorXd cost_diagonal(const qaoae::Graph& g) {
  const Eigen::Index dim = 1LL << g.n_vertices;
  VectorXd diag = VectorXd::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    for (const auto& e : g.edges) {
      const double zi = ((b >> e.i) & 1) ? -1.0 : 1.0;
      const double zj = ((b >> e.j) & 1) ? -1.0 : 1.0;
      diag[b] += e.w * zi * zj;
    }
  return diag;
}

inline MatrixXcd phase_matrix(const VectorXd& diag, double gamma) {
  VectorXcd exps(diag.size());
  for (Eigen::Index b = 0; b < diag.size(); ++b)
    exps[b] = std::exp(-0.5 * kI * gamma * diag[b]);
  return exps.asDiagonal();
}

inline VectorXcd uniform_state(int n) {
  return VectorXcd::Constant(1LL << n, std::pow(2.0, -0.5 * n));
}

inline VectorXcd qaoa_state(const qaoae::Graph& g, const qaoae::QaoaAngles& angles) {
  const VectorXd diag = cost_diagonal(g);
  VectorXcd psi = uniform_state(g.n_vertices);
  for (int l = 0; l < angles.depth(); ++l) {
    psi = phase_matrix(diag, angles.gammas[l]) * psi;
    psi = mixer_matrix(g.n_vertices, angles.betas[l]) * psi;
  }
  return psi;
}

inline double cost_expectation(const qaoae::Graph& g, const VectorXcd& psi) {
  const VectorXd diag = cost_diagonal(g);
  double value = 0.0;
  for (Eigen::Index b = 0; b < diag.size(); ++b)
    value += std::norm(psi[b]) * diag[b];
  return value;
}

// Eigenvalues of the reduced density matrix of side A by explicit partial
// trace, descending.
inline VectorXd partial_trace_spectrum(const VectorXcd& psi, int n,
                                       const std::vector<int>& side_a) {
  std::vector<int> side_b;
  for (int q = 0; q < n; ++q)
    if (std::find(side_a.begin(), side_a.end(), q) == side_a.end())
      side_b.push_back(q);
  const auto na = static_cast<int>(side_a.size());
  const auto nb = static_cast<int>(side_b.size());
  const Eigen::Index da = 1LL << na, db = 1LL << nb;
  auto scatter = [](const std::vector<int>& qubits, Eigen::Index bits) {
    Eigen::Index v = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k)
      if ((bits >> k) & 1) v |= 1LL << qubits[k];
    return v;
  };
  MatrixXcd rho = MatrixXcd::Zero(da, da);
  for (Eigen::Index r = 0; r < da; ++r)
    for (Eigen::Index c = 0; c < da; ++c)
      for (Eigen::Index k = 0; k < db; ++k) {
        const Eigen::Index br = scatter(side_a, r) | scatter(side_b, k);
        const Eigen::Index bc = scatter(side_a, c) | scatter(side_b, k);
        rho(r, c) += psi[br] * std::conj(psi[bc]);
      }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

// Projector weight of psi on the ground space of the cost operator.
inline double ground_space_overlap(const qaoae::Graph& g, const VectorXcd& psi) {
  const VectorXd diag = cost_diagonal(g);
  const double ground = diag.minCoeff();
  double weight = 0.0;
  for (Eigen::Index b = 0; b < diag.size(); ++b)
    if (diag[b] <= ground + 1e-12) weight += std::norm(psi[b]);
  return weight;
}

// Exhaustive (beta, gamma) scan for p = 1 on a small graph.
inline double grid_scan_min_cost(const qaoae::Graph& g, int beta_steps,
                                 int gamma_steps) {
  const VectorXd diag = cost_diagonal(g);
  double best = std::numeric_limits<double>::infinity();
  for (int ib = 0; ib < beta_steps; ++ib)
    for (int ig = 0; ig < gamma_steps; ++ig) {
      qaoae::QaoaAngles angles;
      angles.betas = Eigen::VectorXd::Constant(1, M_PI * ib / beta_steps);
      angles.gammas = Eigen::VectorXd::Constant(1, 2.0 * M_PI * ig / gamma_steps);
      const VectorXcd psi = qaoa_state(g, angles);
      double value = 0.0;
      for (Eigen::Index b = 0; b < diag.size(); ++b)
        value += std::norm(psi[b]) * diag[b];
      best = std::min(best, value);
    }
  return best;
}

}  // namespace oracle
