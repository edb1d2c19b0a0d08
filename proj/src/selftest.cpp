#include "qaoae/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "qaoae/entanglement.hpp"
#include "qaoae/experiments.hpp"
#include "qaoae/graph.hpp"
#include "qaoae/optimize.hpp"
#include "qaoae/rng.hpp"
#include "qaoae/simulator.hpp"

namespace qaoae {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
const std::complex<double> kImag(0.0, 1.0);

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Dense reference circuit assembled from explicit matrix products; shares
// nothing with the butterfly kernels it cross-checks.
VectorXcd dense_qaoa(const Graph& g, const QaoaAngles& angles) {
  const int n = g.n_vertices;
  const Eigen::Index dim = 1LL << n;
  VectorXcd psi = VectorXcd::Constant(dim, std::pow(2.0, -0.5 * n));
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    for (const auto& e : g.edges) {
      const double zi = ((b >> e.i) & 1) ? -1.0 : 1.0;
      const double zj = ((b >> e.j) & 1) ? -1.0 : 1.0;
      diag[b] += e.w * zi * zj;
    }
  for (int l = 0; l < angles.depth(); ++l) {
    for (Eigen::Index b = 0; b < dim; ++b)
      psi[b] *= std::exp(-0.5 * kImag * angles.gammas[l] * diag[b]);
    MatrixXcd rx(2, 2);
    const double half = 0.5 * angles.betas[l];
    rx << std::cos(half), -kImag * std::sin(half),
          -kImag * std::sin(half), std::cos(half);
    MatrixXcd mixer = MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q) mixer = kron(rx, mixer);  // qubit 0 = LSB
    psi = mixer * psi;
  }
  return psi;
}

struct Reporter {
  std::ostream& os;
  bool all_ok = true;
  void row(const std::string& name, bool ok, const std::string& detail = "") {
    os << (ok ? "[PASS] " : "[FAIL] ") << std::left << std::setw(44) << name;
    if (!detail.empty()) os << detail;
    os << '\n';
    all_ok = all_ok && ok;
  }
};

}  // namespace

bool selftest(std::ostream& os) {
  Reporter report{os};

  // circuit kernels against the dense reference
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t seed = split_seed(0xABCDEF, trial);
    SplitMix64 rng(seed);
    const int n = 2 + static_cast<int>(rng.below(3));
    const int p = 1 + static_cast<int>(rng.below(3));
    Graph g;
    switch (rng.below(3)) {
      case 0: g = gen_linear(n, rng.next_u64()); break;
      case 1: g = gen_complete(n, rng.next_u64()); break;
      default: g = n >= 4 && n % 2 == 0 ? gen_regular3(n, rng.next_u64())
                                        : gen_complete(n, rng.next_u64());
    }
    const QaoaAngles angles = sample_initial_angles(p, rng.next_u64());
    const StateVector state = run_qaoa(g, angles);
    worst = std::max(worst, (state.amps - dense_qaoa(g, angles)).cwiseAbs().maxCoeff());
  }
  report.row("circuit matches dense reference", worst < 1e-10,
             "max dev " + std::to_string(worst));

  // unitarity and inversion symmetry along a deep random circuit
  {
    const Graph g = gen_complete(8, 11);
    const DiagonalCost cost = build_cost_diagonal(g);
    StateVector state = init_plus_state(8);
    double norm_drift = 0.0, asym = 0.0;
    for (int l = 1; l <= 50; ++l) {
      const QaoaAngles draw = sample_initial_angles(1, split_seed(12, l));
      apply_phase(state, draw.gammas[0], cost);
      apply_mixer(state, draw.betas[0]);
      norm_drift = std::max(norm_drift, std::abs(state.amps.squaredNorm() - 1.0));
      asym = std::max(asym, z2_asymmetry(state));
    }
    report.row("norm preserved over 50 layers", norm_drift < 1e-10,
               "drift " + std::to_string(norm_drift));
    report.row("qubit-inversion symmetry", asym < 1e-10,
               "max dev " + std::to_string(asym));
  }

  // entropy bounds and A/B symmetry
  {
    const Graph g = gen_regular3(8, 21);
    const QaoaAngles angles = sample_initial_angles(4, 22);
    const StateVector state = run_qaoa(g, angles);
    const Bipartition part = random_bipartition(8, 23);
    const EntanglementSpectrum spec = schmidt_spectrum(state, part);
    const double s = von_neumann_entropy(spec);
    report.row("entropy within [0, N/2 ln 2]",
               s >= 0.0 && s <= 4.0 * std::numbers::ln2 + 1e-9,
               "S = " + std::to_string(s));
    const EntanglementSpectrum other = schmidt_spectrum(state, complement(part));
    report.row("A/B spectrum symmetry",
               (spec.values - other.values).cwiseAbs().maxCoeff() < 1e-10);
    const BlockSpectra blocks = spectrum_blocks(state, part);
    Eigen::VectorXd merged(spec.values.size());
    merged << blocks.even, blocks.odd;
    std::sort(merged.data(), merged.data() + merged.size(), std::greater<>());
    report.row("symmetry blocks recompose spectrum",
               (merged - spec.values).cwiseAbs().maxCoeff() < 1e-9);
    bool in_range = true;
    for (double r : gap_ratios(spec)) in_range = in_range && r >= 0.0 && r <= 1.0;
    report.row("gap ratios in [0,1]", in_range);
  }

  // Marchenko-Pastur curve normalization
  {
    double integral = 0.0;
    const int bins = 20000;
    for (int k = 0; k < bins; ++k)
      integral += marchenko_pastur_lambda2((k + 0.5) / bins, 0) / bins;
    report.row("Marchenko-Pastur integral = 1", std::abs(integral - 1.0) < 1e-6,
               "got " + std::to_string(integral));
  }

  // variational cost respects the brute-force bound
  {
    const Graph g = gen_regular3(8, 31);
    const OptimizationResult best = minimize_multistart(g, 2, 10, 32);
    const BruteForceResult exact = maxcut_bruteforce(g);
    report.row("optimized cost >= exact minimum",
               best.cost >= exact.min_cost - 1e-8,
               "best " + std::to_string(best.cost) + " vs exact " +
                   std::to_string(exact.min_cost));
  }

  return report.all_ok;
}

}  // namespace qaoae
