#include "qaoae/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qaoae/rng.hpp"

namespace qaoae {

Bipartition random_bipartition(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw std::invalid_argument("random_bipartition: need even n >= 2");
  SplitMix64 rng(seed);
  std::vector<int> perm(n_qubits);
  for (int q = 0; q < n_qubits; ++q) perm[q] = q;
  for (int i = n_qubits - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(i + 1)]);
  Bipartition part;
  part.n_qubits = n_qubits;
  part.side_a.assign(perm.begin(), perm.begin() + n_qubits / 2);
  std::sort(part.side_a.begin(), part.side_a.end());
  return part;
}

Bipartition contiguous_bipartition(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0)
    throw std::invalid_argument("contiguous_bipartition: need even n >= 2");
  Bipartition part;
  part.n_qubits = n_qubits;
  for (int q = 0; q < n_qubits / 2; ++q) part.side_a.push_back(q);
  return part;
}

Bipartition complement(const Bipartition& part) {
  Bipartition other;
  other.n_qubits = part.n_qubits;
  std::size_t k = 0;
  for (int q = 0; q < part.n_qubits; ++q) {
    if (k < part.side_a.size() && part.side_a[k] == q)
      ++k;
    else
      other.side_a.push_back(q);
  }
  return other;
}

namespace {

// scatter[r] places the bits of r at the listed qubit positions.
std::vector<std::uint64_t> scatter_table(const std::vector<int>& qubits) {
  const std::uint64_t dim = 1ULL << qubits.size();
  std::vector<std::uint64_t> table(dim, 0);
  for (std::uint64_t r = 0; r < dim; ++r) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k)
      if ((r >> k) & 1) v |= 1ULL << qubits[k];
    table[r] = v;
  }
  return table;
}

Eigen::MatrixXcd amplitude_matrix(const StateVector& state,
                                  const Bipartition& part) {
  if (part.n_qubits != state.n_qubits)
    throw std::invalid_argument("bipartition does not match state size");
  if (static_cast<int>(part.side_a.size()) * 2 != part.n_qubits)
    throw std::invalid_argument("bipartition sides must have N/2 qubits");
  const std::vector<int> side_b = complement(part).side_a;
  const auto scat_a = scatter_table(part.side_a);
  const auto scat_b = scatter_table(side_b);
  const auto rows = static_cast<Eigen::Index>(scat_a.size());
  const auto cols = static_cast<Eigen::Index>(scat_b.size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r)
      m(r, c) = state.amps[scat_a[r] | scat_b[c]];
  return m;
}

// In-place orthonormal Walsh-Hadamard transform of each column, then each
// row: conjugation of a Hermitian matrix by H on every subsystem qubit.
void hadamard_conjugate(Eigen::MatrixXcd& m) {
  const Eigen::Index dim = m.rows();
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  for (Eigen::Index stride = 1; stride < dim; stride *= 2) {
    for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        const Eigen::Index i0 = base + off, i1 = i0 + stride;
        const Eigen::RowVectorXcd r0 = m.row(i0), r1 = m.row(i1);
        m.row(i0) = (r0 + r1) * inv_sqrt2;
        m.row(i1) = (r0 - r1) * inv_sqrt2;
      }
    }
  }
  for (Eigen::Index stride = 1; stride < dim; stride *= 2) {
    for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        const Eigen::Index i0 = base + off, i1 = i0 + stride;
        const Eigen::VectorXcd c0 = m.col(i0), c1 = m.col(i1);
        m.col(i0) = (c0 + c1) * inv_sqrt2;
        m.col(i1) = (c0 - c1) * inv_sqrt2;
      }
    }
  }
}

}  // namespace

EntanglementSpectrum schmidt_spectrum(const StateVector& state,
                                      const Bipartition& part) {
  const Eigen::MatrixXcd m = amplitude_matrix(state, part);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  EntanglementSpectrum spectrum;
  spectrum.values = svd.singularValues().array().square();
  return spectrum;
}

double von_neumann_entropy(const EntanglementSpectrum& spectrum) {
  double s = 0.0;
  for (const double v : spectrum.values)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

double renyi_entropy(const EntanglementSpectrum& spectrum, double q) {
  if (!(q > 0.0))
    throw std::invalid_argument("renyi_entropy: need q > 0");
  if (q == 1.0)
    throw std::invalid_argument("renyi_entropy: q = 1 is von_neumann_entropy");
  double sum = 0.0;
  for (const double v : spectrum.values)
    if (v > 0.0) sum += std::pow(v, q);
  return std::log(sum) / (1.0 - q);
}

std::vector<double> gap_ratios(const EntanglementSpectrum& spectrum,
                               double floor) {
  std::vector<double> levels;
  for (const double v : spectrum.values)
    if (v > floor) levels.push_back(v);
  if (levels.size() < 3)
    throw std::runtime_error("gap_ratios: fewer than 3 levels above floor");
  std::sort(levels.begin(), levels.end());
  std::vector<double> ratios;
  ratios.reserve(levels.size() - 2);
  for (std::size_t k = 1; k + 1 < levels.size(); ++k) {
    const double d0 = levels[k] - levels[k - 1];
    const double d1 = levels[k + 1] - levels[k];
    const double hi = std::max(d0, d1);
    ratios.push_back(hi > 0.0 ? std::min(d0, d1) / hi : 0.0);
  }
  return ratios;
}

double mean_gap_ratio(const std::vector<double>& ratios) {
  if (ratios.empty())
    throw std::runtime_error("mean_gap_ratio: no ratios");
  double sum = 0.0;
  for (const double r : ratios) sum += r;
  return sum / static_cast<double>(ratios.size());
}

double poisson_gap_pdf(double r) {
  if (r < 0.0 || r > 1.0)
    throw std::invalid_argument("poisson_gap_pdf: r outside [0,1]");
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

double marchenko_pastur_lambda2(double x, int n_qubits) {
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("marchenko_pastur_lambda2: x outside [0,1]");
  const double target = 0.5 * std::numbers::pi * x;
  double lo = 0.0, hi = 0.5 * std::numbers::pi;
  // f(phi) = phi - sin(2 phi)/2 increases from 0 to pi/2
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = mid - 0.5 * std::sin(2.0 * mid);
    if (std::abs(f - target) < 1e-12) {
      lo = hi = mid;
      break;
    }
    (f < target ? lo : hi) = mid;
  }
  const double phi = 0.5 * (lo + hi);
  const double c = std::cos(phi);
  return 4.0 * c * c / std::pow(2.0, 0.5 * n_qubits);
}

BlockSpectra spectrum_blocks(const StateVector& state, const Bipartition& part) {
  if (z2_asymmetry(state) > 1e-8)
    throw std::runtime_error("spectrum_blocks: state breaks the inversion symmetry");
  const Eigen::MatrixXcd m = amplitude_matrix(state, part);
  Eigen::MatrixXcd rho = m * m.adjoint();
  hadamard_conjugate(rho);
  const Eigen::Index dim = rho.rows();
  std::vector<Eigen::Index> sector[2];
  for (Eigen::Index i = 0; i < dim; ++i)
    sector[std::popcount(static_cast<std::uint64_t>(i)) & 1].push_back(i);
  BlockSpectra blocks;
  for (int parity = 0; parity < 2; ++parity) {
    const auto& idx = sector[parity];
    const auto size = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd block(size, size);
    for (Eigen::Index c = 0; c < size; ++c)
      for (Eigen::Index r = 0; r < size; ++r) block(r, c) = rho(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block,
                                                           Eigen::EigenvaluesOnly);
    Eigen::VectorXd values = solver.eigenvalues().reverse();
    values = values.cwiseMax(0.0);  // clamp -1e-16-scale noise
    (parity == 0 ? blocks.even : blocks.odd) = std::move(values);
  }
  return blocks;
}

}  // namespace qaoae
