#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qaoae/simulator.hpp"

namespace qaoae {

// Levels at or below this are dropped before gap statistics; below double
// precision resolution the gaps are numerical noise. Analysis output
// reports the floor that was used.
inline constexpr double kDefaultLevelFloor = 1e-14;

// Reference mean adjacent gap ratios (min/max convention, r in [0,1]).
inline constexpr double kMeanGapRatioPoisson = 0.38629436111989062;  // 2 ln 2 - 1
inline constexpr double kMeanGapRatioGue = 0.60266;                  // one GUE block
inline constexpr double kMeanGapRatioGueZ2 = 0.422085;               // two mixed GUE blocks

// Equal split of the qubits: side A holds N/2 sorted indices.
struct Bipartition {
  int n_qubits = 0;
  std::vector<int> side_a;
};

// Uniformly random N/2-subset, deterministic in seed.
Bipartition random_bipartition(int n_qubits, std::uint64_t seed);

// side A = {0, ..., N/2 - 1}: the left half of a linear graph.
Bipartition contiguous_bipartition(int n_qubits);

Bipartition complement(const Bipartition& part);

// Descending Schmidt eigenvalues lambda_k^2 for one bipartition; they sum
// to 1 for a normalized state.
struct EntanglementSpectrum {
  Eigen::VectorXd values;
};

// Reshapes the amplitudes into the 2^{N/2} x 2^{N/2} matrix
// M[s_A, s_B] = c_s and squares its singular values.
EntanglementSpectrum schmidt_spectrum(const StateVector& state,
                                      const Bipartition& part);

// -sum_k lambda_k^2 ln lambda_k^2, with 0 ln 0 = 0.
double von_neumann_entropy(const EntanglementSpectrum& spectrum);

// ln(sum_k (lambda_k^2)^q) / (1 - q); q > 0, q != 1.
double renyi_entropy(const EntanglementSpectrum& spectrum, double q);

// Adjacent gap ratios of the levels above `floor`, sorted ascending:
// r_k = min(d_k, d_{k+1}) / max(d_k, d_{k+1}) in [0,1], r_k = 0 for an
// exactly degenerate pair. Needs at least 3 retained levels.
std::vector<double> gap_ratios(const EntanglementSpectrum& spectrum,
                               double floor = kDefaultLevelFloor);

double mean_gap_ratio(const std::vector<double>& ratios);

// P(r) = 2 / (1 + r)^2 on [0,1]; the gap-ratio law of uncorrelated levels.
double poisson_gap_pdf(double r);

// Marchenko-Pastur entanglement spectrum of a random state: solves
// (pi/2) x = phi - sin(2 phi)/2 for phi in [0, pi/2] by bisection and
// returns 4 cos^2(phi) / 2^{n/2}. Pass n_qubits = 0 for the scaled value
// 2^{N/2} lambda^2(x) itself.
double marchenko_pastur_lambda2(double x, int n_qubits);

struct BlockSpectra {
  Eigen::VectorXd even;  // descending
  Eigen::VectorXd odd;
};

// Resolves the spectrum into the two global-inversion symmetry blocks:
// rho_A is conjugated by Hadamards on every A qubit, which turns subsystem
// X-parity into bit parity, and the even/odd sectors are diagonalized
// independently. Requires the state to carry the symmetry (checked via
// z2_asymmetry <= 1e-8).
BlockSpectra spectrum_blocks(const StateVector& state, const Bipartition& part);

}  // namespace qaoae
