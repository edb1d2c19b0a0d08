#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>

#include "qaoae/graph.hpp"

namespace qaoae {

// Largest register the dense simulator will allocate (2^26 amplitudes,
// 1 GiB). Raise if you have the memory; everything here is O(2^N).
inline constexpr int kMaxQubits = 26;

// Full 2^N amplitude vector. Basis index b encodes qubit q as bit q of b,
// qubit 0 in the least significant bit.
struct StateVector {
  int n_qubits = 0;
  Eigen::VectorXcd amps;
};

// One circuit schedule: p mixer angles beta and p phase angles gamma, radians.
struct QaoaAngles {
  Eigen::VectorXd betas;
  Eigen::VectorXd gammas;
  int depth() const { return static_cast<int>(betas.size()); }
};

// Cost operator C as a precomputed computational-basis diagonal,
// diag[b] = sum_{(i,j,w)} w * z_i(b) * z_j(b) with z_i = +1 for bit 0.
// When all entries lie on a small arithmetic lattice (unit-weight graphs)
// a level table is kept so the phase gate computes one complex exponential
// per distinct cost value instead of one per amplitude.
struct DiagonalCost {
  int n_qubits = 0;
  Eigen::VectorXd diag;
  std::vector<std::int32_t> level_index;  // empty unless quantized
  Eigen::VectorXd level_values;
};

DiagonalCost build_cost_diagonal(const Graph& g);

// |+>^N: every amplitude 2^{-N/2}.
StateVector init_plus_state(int n_qubits);

// exp(-i beta X_j / 2) on every qubit j, in-place butterfly updates.
void apply_mixer(StateVector& state, double beta);

// amps[b] *= exp(-i gamma diag[b] / 2).
void apply_phase(StateVector& state, double gamma, const DiagonalCost& cost);

// Layer l applies the phase gate before the mixer; layer 1 acts first.
StateVector run_qaoa(const DiagonalCost& cost, const QaoaAngles& angles);
StateVector run_qaoa(const Graph& g, const QaoaAngles& angles);

// <state| C |state> = sum_b |amps[b]|^2 diag[b].
double cost_expectation(const StateVector& state, const DiagonalCost& cost);

// Discretized interpolation from the transverse field to the cost operator:
// L = T/dt layers, and for l = 1..L with t = l*dt,
//   gamma_l = 2 t dt / T,   beta_l = -2 dt (1 - t/T).
// T/dt must round to an integer layer count.
QaoaAngles annealing_schedule(double total_time, double dt);

using AnnealObserver = std::function<void(double t, const StateVector&)>;

// Runs annealing_schedule(T, dt) as a circuit. The observer (optional) is
// invoked at t = 0 on the initial product state and after every layer, so
// trajectory observables can be measured without storing 2^N x L states.
StateVector run_annealing(const Graph& g, double total_time, double dt,
                          const AnnealObserver& observer = {});

// max_b |amps[b] - amps[~b]|: deviation from the global qubit-inversion
// symmetry that every circuit built here preserves on |+>^N.
double z2_asymmetry(const StateVector& state);

// Debug dump: u32 qubit count then 2^N little-endian (re, im) double pairs.
void dump_state(const StateVector& state, std::ostream& os);
StateVector load_state(std::istream& is);

}  // namespace qaoae
