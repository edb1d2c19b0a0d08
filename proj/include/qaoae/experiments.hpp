#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qaoae/entanglement.hpp"
#include "qaoae/graph.hpp"
#include "qaoae/optimize.hpp"

namespace qaoae {

enum class Mode { kRandomized, kOptimized, kAnnealing };
enum class BipartitionPolicy { kAuto, kContiguous, kRandom };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

struct ExperimentConfig {
  Mode mode = Mode::kRandomized;
  GraphKind graph_kind = GraphKind::kComplete;
  std::vector<int> sizes;        // even qubit counts
  int depth = 0;                 // randomized: layers applied and measured
  std::vector<int> depths;       // optimized: circuit depths p
  std::vector<double> times;     // annealing: total times T
  double dt = 0.1;               // annealing time step
  int n_problems = 1;
  int restarts = 1;              // optimized only
  std::uint64_t master_seed = 0;
  BipartitionPolicy bipartition = BipartitionPolicy::kAuto;
  int threads = 0;               // worker cap; 0 = hardware count
  int measure_every = 1;         // record entropy every k layers (and at the end)
  bool measure_gap_ratios = false;   // final-layer r.., randomized mode
  bool measure_block_ratios = false; // per-symmetry-block variant
  bool measure_spectrum = false;     // accumulate the mean final spectrum
  double level_floor = kDefaultLevelFloor;
  int optimizer_budget = 200;    // BFGS iteration cap per restart
};

void validate(const ExperimentConfig& config);

// Contiguous halves on linear graphs, random halves otherwise.
BipartitionPolicy resolve_policy(const ExperimentConfig& config);

// One observation row. CSV schema:
// mode,graph_kind,problem_id,N,p_or_T,layer_or_time,S,r_mean,cost,seed
struct ExperimentRecord {
  Mode mode = Mode::kRandomized;
  GraphKind graph_kind = GraphKind::kComplete;
  int problem_id = 0;
  int n = 0;
  double p_or_t = 0.0;       // circuit depth, or total time T when annealing
  double layer_or_time = 0.0;
  double entropy = 0.0;
  std::optional<double> r_mean;
  std::optional<double> cost;
  std::uint64_t seed = 0;    // per-problem seed; children derived via split_seed
};

// Seed tree: problem = split(split(master, n), index); the children feed
// the graph generator, the bipartition draw, and the angle stream.
struct ProblemSeeds {
  std::uint64_t problem = 0;
  std::uint64_t graph = 0;
  std::uint64_t bipartition = 0;
  std::uint64_t angles = 0;
};
ProblemSeeds derive_seeds(std::uint64_t master_seed, int n, int problem_index);
ProblemSeeds seeds_from_problem(std::uint64_t problem_seed);

struct SeriesStats {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  int count = 0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;
  // Final-layer aggregates from the measure_* switches, keyed by N.
  std::map<int, SeriesStats> final_r_mean;
  std::map<int, SeriesStats> final_r_mean_blocks;
  std::map<int, Eigen::VectorXd> mean_final_spectrum;
};

// Fresh angles per layer and per problem; entropy recorded after every
// measure_every-th layer (and layer 0).
SweepResult run_randomized_sweep(const ExperimentConfig& config);

// minimize_multistart per problem and depth, then the best circuit is
// replayed with entropy and cost recorded after every layer.
SweepResult run_optimized_sweep(const ExperimentConfig& config);

// One trajectory per (problem, T); entropy and cost at every time step.
SweepResult run_annealing_sweep(const ExperimentConfig& config);

SweepResult run_sweep(const ExperimentConfig& config);

// Recomputes the entropy of one record from its stored seed. Optimized
// mode reruns the multistart, so it costs what the sweep cost.
double replay_entropy(const ExperimentConfig& config, const ExperimentRecord& record);

double max_over_layers(const std::vector<double>& trajectory);

struct FitResult {
  double intercept = 0.0;  // power fit: ln(amplitude)
  double slope = 0.0;      // power fit: exponent
  double residual_norm = 0.0;
  int n_points = 0;
};

FitResult linear_fit(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);
FitResult power_fit(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys);

// Mean entropy per (n, p_or_t, layer_or_time), two-pass mean/stderr.
struct SeriesKey {
  int n = 0;
  double p_or_t = 0.0;
  double layer_or_time = 0.0;
  auto operator<=>(const SeriesKey&) const = default;
};
std::map<SeriesKey, SeriesStats> aggregate_entropy(
    const std::vector<ExperimentRecord>& records);
// Single-pass (Welford) variant; agrees with the two-pass one to 1e-12.
std::map<SeriesKey, SeriesStats> aggregate_entropy_streaming(
    const std::vector<ExperimentRecord>& records);

// Mean over a trailing window of layers, after checking the window's
// relative drift stays below `max_drift`; the operational "saturated"
// readout for fits against N.
std::optional<double> saturation_mean(const std::vector<double>& trajectory,
                                      int window = 10, double max_drift = 0.01);

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records_csv(std::istream& is);

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json summary_json(const SweepResult& result);

// Per-figure plot series derived from a sweep summary (see cli docs):
//   fig2a: per N, columns (ell, S_mean, S_stderr)
//   fig3d: per N, columns (x, scaled_lambda2_mean, mp_reference)
//   fig5g: columns (T, b_of_T) plus the fitted exponent in metadata
void emit_plot_data(const nlohmann::json& summary, const std::string& figure_id,
                    const std::string& output_dir);

}  // namespace qaoae
