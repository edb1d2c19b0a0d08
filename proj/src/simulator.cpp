#include "qaoae/simulator.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace qaoae {

namespace {

// Phase application is worth a table when few distinct cost values exist.
constexpr std::size_t kMaxLevels = 64;

void quantize_levels(DiagonalCost& cost) {
  std::map<double, std::int32_t> values;
  const auto dim = static_cast<std::size_t>(cost.diag.size());
  for (std::size_t b = 0; b < dim; ++b) {
    values.try_emplace(cost.diag[b], 0);
    if (values.size() > kMaxLevels) return;  // keep dense path
  }
  std::int32_t next = 0;
  for (auto& [value, id] : values) id = next++;
  cost.level_index.resize(dim);
  for (std::size_t b = 0; b < dim; ++b)
    cost.level_index[b] = values.find(cost.diag[b])->second;
  cost.level_values.resize(static_cast<Eigen::Index>(values.size()));
  for (const auto& [value, id] : values) cost.level_values[id] = value;
}

}  // namespace

DiagonalCost build_cost_diagonal(const Graph& g) {
  const int n = g.n_vertices;
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("build_cost_diagonal: qubit count out of range");
  DiagonalCost cost;
  cost.n_qubits = n;
  const std::uint64_t dim = 1ULL << n;
  cost.diag = Eigen::VectorXd::Zero(dim);
  for (const auto& e : g.edges) {
    const std::uint64_t mi = 1ULL << e.i, mj = 1ULL << e.j;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const bool cut = ((b & mi) != 0) != ((b & mj) != 0);
      cost.diag[b] += cut ? -e.w : e.w;
    }
  }
  quantize_levels(cost);
  return cost;
}

StateVector init_plus_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("init_plus_state: qubit count out of range");
  StateVector state;
  state.n_qubits = n_qubits;
  const std::uint64_t dim = 1ULL << n_qubits;
  state.amps = Eigen::VectorXcd::Constant(
      dim, std::complex<double>(std::pow(2.0, -0.5 * n_qubits), 0.0));
  return state;
}

void apply_mixer(StateVector& state, double beta) {
  const double c = std::cos(0.5 * beta);
  const std::complex<double> ms(0.0, -std::sin(0.5 * beta));
  const std::uint64_t dim = 1ULL << state.n_qubits;
  std::complex<double>* a = state.amps.data();
  for (int q = 0; q < state.n_qubits; ++q) {
    const std::uint64_t mask = 1ULL << q;
    for (std::uint64_t base = 0; base < dim; base += 2 * mask) {
      for (std::uint64_t off = 0; off < mask; ++off) {
        const std::uint64_t i0 = base + off;
        const std::uint64_t i1 = i0 + mask;
        const std::complex<double> a0 = a[i0], a1 = a[i1];
        a[i0] = c * a0 + ms * a1;
        a[i1] = c * a1 + ms * a0;
      }
    }
  }
}

void apply_phase(StateVector& state, double gamma, const DiagonalCost& cost) {
  if (cost.n_qubits != state.n_qubits)
    throw std::invalid_argument("apply_phase: qubit count mismatch");
  const std::uint64_t dim = 1ULL << state.n_qubits;
  std::complex<double>* a = state.amps.data();
  if (!cost.level_index.empty()) {
    Eigen::VectorXcd table(cost.level_values.size());
    for (Eigen::Index k = 0; k < cost.level_values.size(); ++k) {
      const double theta = -0.5 * gamma * cost.level_values[k];
      table[k] = std::complex<double>(std::cos(theta), std::sin(theta));
    }
    const std::int32_t* level = cost.level_index.data();
    for (std::uint64_t b = 0; b < dim; ++b) a[b] *= table[level[b]];
    return;
  }
  const double* d = cost.diag.data();
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double theta = -0.5 * gamma * d[b];
    a[b] *= std::complex<double>(std::cos(theta), std::sin(theta));
  }
}

StateVector run_qaoa(const DiagonalCost& cost, const QaoaAngles& angles) {
  if (angles.betas.size() != angles.gammas.size())
    throw std::invalid_argument("run_qaoa: beta/gamma length mismatch");
  StateVector state = init_plus_state(cost.n_qubits);
  for (int l = 0; l < angles.depth(); ++l) {
    apply_phase(state, angles.gammas[l], cost);
    apply_mixer(state, angles.betas[l]);
  }
  return state;
}

StateVector run_qaoa(const Graph& g, const QaoaAngles& angles) {
  return run_qaoa(build_cost_diagonal(g), angles);
}

double cost_expectation(const StateVector& state, const DiagonalCost& cost) {
  if (cost.n_qubits != state.n_qubits)
    throw std::invalid_argument("cost_expectation: qubit count mismatch");
  return (state.amps.array().abs2() * cost.diag.array()).sum();
}

QaoaAngles annealing_schedule(double total_time, double dt) {
  if (!(total_time > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("annealing_schedule: need T > 0 and dt > 0");
  const double steps = total_time / dt;
  const auto n_layers = static_cast<long long>(std::llround(steps));
  if (n_layers < 1 || std::abs(steps - static_cast<double>(n_layers)) > 1e-9 * steps)
    throw std::invalid_argument("annealing_schedule: T/dt must be an integer");
  QaoaAngles angles;
  angles.betas.resize(n_layers);
  angles.gammas.resize(n_layers);
  for (long long l = 1; l <= n_layers; ++l) {
    const double t = static_cast<double>(l) * dt;
    angles.gammas[l - 1] = 2.0 * t * dt / total_time;
    angles.betas[l - 1] = -2.0 * dt * (1.0 - t / total_time);
  }
  return angles;
}

StateVector run_annealing(const Graph& g, double total_time, double dt,
                          const AnnealObserver& observer) {
  const QaoaAngles angles = annealing_schedule(total_time, dt);
  const DiagonalCost cost = build_cost_diagonal(g);
  StateVector state = init_plus_state(cost.n_qubits);
  if (observer) observer(0.0, state);
  for (int l = 0; l < angles.depth(); ++l) {
    apply_phase(state, angles.gammas[l], cost);
    apply_mixer(state, angles.betas[l]);
    if (observer) observer(static_cast<double>(l + 1) * dt, state);
  }
  return state;
}

double z2_asymmetry(const StateVector& state) {
  const std::uint64_t dim = 1ULL << state.n_qubits;
  const std::uint64_t mask = dim - 1;
  double worst = 0.0;
  for (std::uint64_t b = 0; b < dim / 2; ++b)
    worst = std::max(worst, std::abs(state.amps[b] - state.amps[~b & mask]));
  return worst;
}

void dump_state(const StateVector& state, std::ostream& os) {
  const std::uint32_t n = state.n_qubits;
  os.write(reinterpret_cast<const char*>(&n), sizeof(n));
  os.write(reinterpret_cast<const char*>(state.amps.data()),
           static_cast<std::streamsize>(sizeof(std::complex<double>) * state.amps.size()));
}

StateVector load_state(std::istream& is) {
  std::uint32_t n = 0;
  is.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!is || n < 1 || n > static_cast<std::uint32_t>(kMaxQubits))
    throw std::runtime_error("load_state: bad qubit count");
  StateVector state;
  state.n_qubits = static_cast<int>(n);
  state.amps.resize(1LL << n);
  is.read(reinterpret_cast<char*>(state.amps.data()),
          static_cast<std::streamsize>(sizeof(std::complex<double>) * state.amps.size()));
  if (!is) throw std::runtime_error("load_state: truncated stream");
  return state;
}

}  // namespace qaoae
