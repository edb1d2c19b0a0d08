#include "qaoae/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qaoae/parallel.hpp"
#include "qaoae/rng.hpp"

namespace qaoae {

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::kRandomized: return "randomized";
    case Mode::kOptimized: return "optimized";
    case Mode::kAnnealing: return "annealing";
  }
  throw std::invalid_argument("mode_name: bad mode");
}

Mode mode_from_name(const std::string& name) {
  if (name == "randomized") return Mode::kRandomized;
  if (name == "optimized") return Mode::kOptimized;
  if (name == "annealing") return Mode::kAnnealing;
  throw std::invalid_argument("unknown mode: " + name);
}

void validate(const ExperimentConfig& config) {
  if (config.sizes.empty())
    throw std::invalid_argument("config: no sizes given");
  for (int n : config.sizes)
    if (n < 2 || n % 2 != 0 || n > kMaxQubits)
      throw std::invalid_argument("config: sizes must be even, 2 <= N <= " +
                                  std::to_string(kMaxQubits));
  if (config.n_problems < 1)
    throw std::invalid_argument("config: need n_problems >= 1");
  if (config.measure_every < 1)
    throw std::invalid_argument("config: need measure_every >= 1");
  switch (config.mode) {
    case Mode::kRandomized:
      if (config.depth < 1)
        throw std::invalid_argument("config: randomized mode needs depth >= 1");
      break;
    case Mode::kOptimized:
      if (config.depths.empty())
        throw std::invalid_argument("config: optimized mode needs depths");
      for (int p : config.depths)
        if (p < 1) throw std::invalid_argument("config: depths must be >= 1");
      if (config.restarts < 1)
        throw std::invalid_argument("config: need restarts >= 1");
      break;
    case Mode::kAnnealing:
      if (config.times.empty())
        throw std::invalid_argument("config: annealing mode needs times");
      if (!(config.dt > 0.0))
        throw std::invalid_argument("config: need dt > 0");
      for (double t : config.times)
        annealing_schedule(t, config.dt);  // validates T/dt
      break;
  }
}

BipartitionPolicy resolve_policy(const ExperimentConfig& config) {
  if (config.bipartition != BipartitionPolicy::kAuto) return config.bipartition;
  return config.graph_kind == GraphKind::kLinear ? BipartitionPolicy::kContiguous
                                                 : BipartitionPolicy::kRandom;
}

ProblemSeeds derive_seeds(std::uint64_t master_seed, int n, int problem_index) {
  return seeds_from_problem(
      split_seed(split_seed(master_seed, static_cast<std::uint64_t>(n)),
                 static_cast<std::uint64_t>(problem_index)));
}

ProblemSeeds seeds_from_problem(std::uint64_t problem_seed) {
  ProblemSeeds seeds;
  seeds.problem = problem_seed;
  seeds.graph = split_seed(problem_seed, 0);
  seeds.bipartition = split_seed(problem_seed, 1);
  seeds.angles = split_seed(problem_seed, 2);
  return seeds;
}

namespace {

Graph make_graph(GraphKind kind, int n, std::uint64_t seed) {
  switch (kind) {
    case GraphKind::kLinear: return gen_linear(n, seed);
    case GraphKind::kRegular3: return gen_regular3(n, seed);
    case GraphKind::kComplete: return gen_complete(n, seed);
  }
  throw std::invalid_argument("make_graph: bad kind");
}

Bipartition make_bipartition(BipartitionPolicy policy, int n, std::uint64_t seed) {
  return policy == BipartitionPolicy::kContiguous ? contiguous_bipartition(n)
                                                  : random_bipartition(n, seed);
}

// Fresh (beta, gamma) for layer l of a randomized circuit, reproducible
// from the angle seed alone.
std::pair<double, double> layer_angles(std::uint64_t angles_seed, int layer) {
  const QaoaAngles draw =
      sample_initial_angles(1, split_seed(angles_seed, static_cast<std::uint64_t>(layer)));
  return {draw.betas[0], draw.gammas[0]};
}

struct ProblemOutput {
  std::vector<ExperimentRecord> records;
  std::optional<double> r_mean;
  std::optional<double> r_mean_blocks;
  Eigen::VectorXd final_spectrum;  // size 0 when unused
};

SeriesStats stats_of(const std::vector<double>& values) {
  SeriesStats stats;
  stats.count = static_cast<int>(values.size());
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / stats.count;
  if (stats.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.stderr_of_mean = std::sqrt(ss / (stats.count - 1)) / std::sqrt(stats.count);
  }
  return stats;
}

void reduce_outputs(SweepResult& out, int n, std::vector<ProblemOutput>& outputs) {
  std::vector<double> r_values, rb_values;
  Eigen::VectorXd spectrum_sum;
  int spectrum_count = 0;
  for (auto& po : outputs) {
    for (auto& rec : po.records) out.records.push_back(rec);
    if (po.r_mean) r_values.push_back(*po.r_mean);
    if (po.r_mean_blocks) rb_values.push_back(*po.r_mean_blocks);
    if (po.final_spectrum.size() > 0) {
      if (spectrum_count == 0)
        spectrum_sum = po.final_spectrum;
      else
        spectrum_sum += po.final_spectrum;
      ++spectrum_count;
    }
  }
  if (!r_values.empty()) out.final_r_mean[n] = stats_of(r_values);
  if (!rb_values.empty()) out.final_r_mean_blocks[n] = stats_of(rb_values);
  if (spectrum_count > 0)
    out.mean_final_spectrum[n] = spectrum_sum / spectrum_count;
}

std::optional<double> try_mean_gap_ratio(const EntanglementSpectrum& spectrum,
                                         double floor) {
  try {
    return mean_gap_ratio(gap_ratios(spectrum, floor));
  } catch (const std::runtime_error&) {
    return std::nullopt;  // spectrum too short above the floor
  }
}

}  // namespace

SweepResult run_randomized_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.mode != Mode::kRandomized)
    throw std::invalid_argument("run_randomized_sweep: wrong mode");
  const BipartitionPolicy policy = resolve_policy(config);
  SweepResult out;
  out.config = config;
  for (int n : config.sizes) {
    std::vector<ProblemOutput> outputs(config.n_problems);
    parallel_for(config.n_problems, config.threads, [&](int pid) {
      const ProblemSeeds seeds = derive_seeds(config.master_seed, n, pid);
      const Graph g = make_graph(config.graph_kind, n, seeds.graph);
      const Bipartition part = make_bipartition(policy, n, seeds.bipartition);
      const DiagonalCost cost = build_cost_diagonal(g);
      StateVector state = init_plus_state(n);
      ProblemOutput& po = outputs[pid];
      auto base_record = [&](int layer, double entropy) {
        ExperimentRecord rec;
        rec.mode = config.mode;
        rec.graph_kind = config.graph_kind;
        rec.problem_id = pid;
        rec.n = n;
        rec.p_or_t = config.depth;
        rec.layer_or_time = layer;
        rec.entropy = entropy;
        rec.seed = seeds.problem;
        return rec;
      };
      po.records.push_back(
          base_record(0, von_neumann_entropy(schmidt_spectrum(state, part))));
      for (int layer = 1; layer <= config.depth; ++layer) {
        const auto [beta, gamma] = layer_angles(seeds.angles, layer);
        apply_phase(state, gamma, cost);
        apply_mixer(state, beta);
        const bool last = layer == config.depth;
        if (layer % config.measure_every != 0 && !last) continue;
        const EntanglementSpectrum spectrum = schmidt_spectrum(state, part);
        ExperimentRecord rec = base_record(layer, von_neumann_entropy(spectrum));
        if (last) {
          if (config.measure_gap_ratios) {
            po.r_mean = try_mean_gap_ratio(spectrum, config.level_floor);
            rec.r_mean = po.r_mean;
          }
          if (config.measure_spectrum) po.final_spectrum = spectrum.values;
          if (config.measure_block_ratios) {
            const BlockSpectra blocks = spectrum_blocks(state, part);
            std::vector<double> ratios;
            for (const Eigen::VectorXd* block : {&blocks.even, &blocks.odd}) {
              EntanglementSpectrum block_spectrum;
              block_spectrum.values = *block;
              try {
                const auto block_ratios = gap_ratios(block_spectrum, config.level_floor);
                ratios.insert(ratios.end(), block_ratios.begin(), block_ratios.end());
              } catch (const std::runtime_error&) {
                // block too short above the floor
              }
            }
            if (!ratios.empty()) po.r_mean_blocks = mean_gap_ratio(ratios);
          }
        }
        po.records.push_back(rec);
      }
    });
    reduce_outputs(out, n, outputs);
  }
  return out;
}

SweepResult run_optimized_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.mode != Mode::kOptimized)
    throw std::invalid_argument("run_optimized_sweep: wrong mode");
  const BipartitionPolicy policy = resolve_policy(config);
  MinimizeOptions options;
  options.max_iterations = config.optimizer_budget;
  SweepResult out;
  out.config = config;
  for (int n : config.sizes) {
    for (int depth : config.depths) {
      std::vector<ProblemOutput> outputs(config.n_problems);
      parallel_for(config.n_problems, config.threads, [&](int pid) {
        const ProblemSeeds seeds = derive_seeds(config.master_seed, n, pid);
        const Graph g = make_graph(config.graph_kind, n, seeds.graph);
        const Bipartition part = make_bipartition(policy, n, seeds.bipartition);
        const DiagonalCost cost = build_cost_diagonal(g);
        const OptimizationResult best =
            minimize_multistart(g, depth, config.restarts, seeds.angles, options);
        StateVector state = init_plus_state(n);
        ProblemOutput& po = outputs[pid];
        auto record_layer = [&](int layer) {
          ExperimentRecord rec;
          rec.mode = config.mode;
          rec.graph_kind = config.graph_kind;
          rec.problem_id = pid;
          rec.n = n;
          rec.p_or_t = depth;
          rec.layer_or_time = layer;
          rec.entropy = von_neumann_entropy(schmidt_spectrum(state, part));
          rec.cost = cost_expectation(state, cost);
          rec.seed = seeds.problem;
          po.records.push_back(rec);
        };
        record_layer(0);
        for (int layer = 1; layer <= depth; ++layer) {
          apply_phase(state, best.angles.gammas[layer - 1], cost);
          apply_mixer(state, best.angles.betas[layer - 1]);
          record_layer(layer);
        }
      });
      reduce_outputs(out, n, outputs);
    }
  }
  return out;
}

SweepResult run_annealing_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.mode != Mode::kAnnealing)
    throw std::invalid_argument("run_annealing_sweep: wrong mode");
  const BipartitionPolicy policy = resolve_policy(config);
  SweepResult out;
  out.config = config;
  for (int n : config.sizes) {
    for (double total_time : config.times) {
      std::vector<ProblemOutput> outputs(config.n_problems);
      parallel_for(config.n_problems, config.threads, [&](int pid) {
        const ProblemSeeds seeds = derive_seeds(config.master_seed, n, pid);
        const Graph g = make_graph(config.graph_kind, n, seeds.graph);
        const Bipartition part = make_bipartition(policy, n, seeds.bipartition);
        const DiagonalCost cost = build_cost_diagonal(g);
        ProblemOutput& po = outputs[pid];
        run_annealing(g, total_time, config.dt,
                      [&](double t, const StateVector& state) {
                        ExperimentRecord rec;
                        rec.mode = config.mode;
                        rec.graph_kind = config.graph_kind;
                        rec.problem_id = pid;
                        rec.n = n;
                        rec.p_or_t = total_time;
                        rec.layer_or_time = t;
                        rec.entropy =
                            von_neumann_entropy(schmidt_spectrum(state, part));
                        rec.cost = cost_expectation(state, cost);
                        rec.seed = seeds.problem;
                        po.records.push_back(rec);
                      });
      });
      reduce_outputs(out, n, outputs);
    }
  }
  return out;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  switch (config.mode) {
    case Mode::kRandomized: return run_randomized_sweep(config);
    case Mode::kOptimized: return run_optimized_sweep(config);
    case Mode::kAnnealing: return run_annealing_sweep(config);
  }
  throw std::invalid_argument("run_sweep: bad mode");
}

double replay_entropy(const ExperimentConfig& config, const ExperimentRecord& record) {
  const ProblemSeeds seeds = seeds_from_problem(record.seed);
  const Graph g = make_graph(record.graph_kind, record.n, seeds.graph);
  const Bipartition part =
      make_bipartition(resolve_policy(config), record.n, seeds.bipartition);
  const DiagonalCost cost = build_cost_diagonal(g);
  StateVector state = init_plus_state(record.n);
  switch (record.mode) {
    case Mode::kRandomized: {
      const int target = static_cast<int>(record.layer_or_time);
      for (int layer = 1; layer <= target; ++layer) {
        const auto [beta, gamma] = layer_angles(seeds.angles, layer);
        apply_phase(state, gamma, cost);
        apply_mixer(state, beta);
      }
      break;
    }
    case Mode::kOptimized: {
      MinimizeOptions options;
      options.max_iterations = config.optimizer_budget;
      const OptimizationResult best =
          minimize_multistart(g, static_cast<int>(record.p_or_t), config.restarts,
                              seeds.angles, options);
      const int target = static_cast<int>(record.layer_or_time);
      for (int layer = 1; layer <= target; ++layer) {
        apply_phase(state, best.angles.gammas[layer - 1], cost);
        apply_mixer(state, best.angles.betas[layer - 1]);
      }
      break;
    }
    case Mode::kAnnealing: {
      const QaoaAngles schedule = annealing_schedule(record.p_or_t, config.dt);
      const auto target =
          static_cast<int>(std::llround(record.layer_or_time / config.dt));
      for (int layer = 1; layer <= target; ++layer) {
        apply_phase(state, schedule.gammas[layer - 1], cost);
        apply_mixer(state, schedule.betas[layer - 1]);
      }
      break;
    }
  }
  return von_neumann_entropy(schmidt_spectrum(state, part));
}

double max_over_layers(const std::vector<double>& trajectory) {
  if (trajectory.empty())
    throw std::runtime_error("max_over_layers: empty trajectory");
  return *std::max_element(trajectory.begin(), trajectory.end());
}

FitResult linear_fit(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("linear_fit: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 points");
  if (xs.maxCoeff() - xs.minCoeff() <= 0.0)
    throw std::invalid_argument("linear_fit: degenerate xs");
  Eigen::MatrixXd design(xs.size(), 2);
  design.col(0).setOnes();
  design.col(1) = xs;
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(ys);
  FitResult fit;
  fit.intercept = coef[0];
  fit.slope = coef[1];
  fit.residual_norm = (design * coef - ys).norm();
  fit.n_points = static_cast<int>(xs.size());
  return fit;
}

FitResult power_fit(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("power_fit: length mismatch");
  if (xs.size() < 3) throw std::invalid_argument("power_fit: need >= 3 points");
  if (xs.minCoeff() <= 0.0 || ys.minCoeff() <= 0.0)
    throw std::invalid_argument("power_fit: needs positive data");
  return linear_fit(xs.array().log(), ys.array().log());
}

std::map<SeriesKey, SeriesStats> aggregate_entropy(
    const std::vector<ExperimentRecord>& records) {
  std::map<SeriesKey, std::vector<double>> groups;
  for (const auto& rec : records)
    groups[{rec.n, rec.p_or_t, rec.layer_or_time}].push_back(rec.entropy);
  std::map<SeriesKey, SeriesStats> out;
  for (const auto& [key, values] : groups) out[key] = stats_of(values);
  return out;
}

std::map<SeriesKey, SeriesStats> aggregate_entropy_streaming(
    const std::vector<ExperimentRecord>& records) {
  struct Welford {
    long long count = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::map<SeriesKey, Welford> groups;
  for (const auto& rec : records) {
    Welford& w = groups[{rec.n, rec.p_or_t, rec.layer_or_time}];
    ++w.count;
    const double delta = rec.entropy - w.mean;
    w.mean += delta / static_cast<double>(w.count);
    w.m2 += delta * (rec.entropy - w.mean);
  }
  std::map<SeriesKey, SeriesStats> out;
  for (const auto& [key, w] : groups) {
    SeriesStats stats;
    stats.count = static_cast<int>(w.count);
    stats.mean = w.mean;
    if (w.count > 1)
      stats.stderr_of_mean =
          std::sqrt(w.m2 / static_cast<double>(w.count - 1)) /
          std::sqrt(static_cast<double>(w.count));
    out[key] = stats;
  }
  return out;
}

std::optional<double> saturation_mean(const std::vector<double>& trajectory,
                                      int window, double max_drift) {
  if (static_cast<int>(trajectory.size()) < window || window < 1) return std::nullopt;
  const auto tail = trajectory.end() - window;
  double lo = *tail, hi = *tail, sum = 0.0;
  for (auto it = tail; it != trajectory.end(); ++it) {
    lo = std::min(lo, *it);
    hi = std::max(hi, *it);
    sum += *it;
  }
  const double mean = sum / window;
  if (mean <= 0.0 || (hi - lo) / mean > max_drift) return std::nullopt;
  return mean;
}

namespace {

std::string format_double(double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

double parse_double(const std::string& field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::runtime_error("csv: bad float field '" + field + "'");
  return value;
}

}  // namespace

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  os << "mode,graph_kind,problem_id,N,p_or_T,layer_or_time,S,r_mean,cost,seed\n";
  for (const auto& rec : records) {
    os << mode_name(rec.mode) << ',' << graph_kind_name(rec.graph_kind) << ','
       << rec.problem_id << ',' << rec.n << ',' << format_double(rec.p_or_t) << ','
       << format_double(rec.layer_or_time) << ',' << format_double(rec.entropy) << ',';
    if (rec.r_mean) os << format_double(*rec.r_mean);
    os << ',';
    if (rec.cost) os << format_double(*rec.cost);
    os << ',' << rec.seed << '\n';
  }
}

std::vector<ExperimentRecord> read_records_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("csv: empty input");
  if (line != "mode,graph_kind,problem_id,N,p_or_T,layer_or_time,S,r_mean,cost,seed")
    throw std::runtime_error("csv: unexpected header");
  std::vector<ExperimentRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 10) throw std::runtime_error("csv: bad field count");
    ExperimentRecord rec;
    rec.mode = mode_from_name(fields[0]);
    rec.graph_kind = graph_kind_from_name(fields[1]);
    rec.problem_id = std::stoi(fields[2]);
    rec.n = std::stoi(fields[3]);
    rec.p_or_t = parse_double(fields[4]);
    rec.layer_or_time = parse_double(fields[5]);
    rec.entropy = parse_double(fields[6]);
    if (!fields[7].empty()) rec.r_mean = parse_double(fields[7]);
    if (!fields[8].empty()) rec.cost = parse_double(fields[8]);
    rec.seed = std::stoull(fields[9]);
    records.push_back(rec);
  }
  return records;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["mode"] = mode_name(config.mode);
  j["graph"] = graph_kind_name(config.graph_kind);
  j["sizes"] = config.sizes;
  j["depth"] = config.depth;
  j["depths"] = config.depths;
  j["times"] = config.times;
  j["dt"] = config.dt;
  j["problems"] = config.n_problems;
  j["restarts"] = config.restarts;
  j["seed"] = config.master_seed;
  switch (config.bipartition) {
    case BipartitionPolicy::kAuto: j["bipartition"] = "auto"; break;
    case BipartitionPolicy::kContiguous: j["bipartition"] = "contiguous"; break;
    case BipartitionPolicy::kRandom: j["bipartition"] = "random"; break;
  }
  j["threads"] = config.threads;
  j["measure_every"] = config.measure_every;
  j["measure_gap_ratios"] = config.measure_gap_ratios;
  j["measure_block_ratios"] = config.measure_block_ratios;
  j["measure_spectrum"] = config.measure_spectrum;
  j["level_floor"] = config.level_floor;
  j["optimizer_budget"] = config.optimizer_budget;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  if (j.contains("mode")) config.mode = mode_from_name(j["mode"].get<std::string>());
  if (j.contains("graph"))
    config.graph_kind = graph_kind_from_name(j["graph"].get<std::string>());
  if (j.contains("sizes")) config.sizes = j["sizes"].get<std::vector<int>>();
  if (j.contains("depth")) config.depth = j["depth"].get<int>();
  if (j.contains("depths")) config.depths = j["depths"].get<std::vector<int>>();
  if (j.contains("times")) config.times = j["times"].get<std::vector<double>>();
  if (j.contains("dt")) config.dt = j["dt"].get<double>();
  if (j.contains("problems")) config.n_problems = j["problems"].get<int>();
  if (j.contains("restarts")) config.restarts = j["restarts"].get<int>();
  if (j.contains("seed")) config.master_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("bipartition")) {
    const std::string name = j["bipartition"].get<std::string>();
    if (name == "auto")
      config.bipartition = BipartitionPolicy::kAuto;
    else if (name == "contiguous")
      config.bipartition = BipartitionPolicy::kContiguous;
    else if (name == "random")
      config.bipartition = BipartitionPolicy::kRandom;
    else
      throw std::invalid_argument("unknown bipartition policy: " + name);
  }
  if (j.contains("threads")) config.threads = j["threads"].get<int>();
  if (j.contains("measure_every")) config.measure_every = j["measure_every"].get<int>();
  if (j.contains("measure_gap_ratios"))
    config.measure_gap_ratios = j["measure_gap_ratios"].get<bool>();
  if (j.contains("measure_block_ratios"))
    config.measure_block_ratios = j["measure_block_ratios"].get<bool>();
  if (j.contains("measure_spectrum"))
    config.measure_spectrum = j["measure_spectrum"].get<bool>();
  if (j.contains("level_floor")) config.level_floor = j["level_floor"].get<double>();
  if (j.contains("optimizer_budget"))
    config.optimizer_budget = j["optimizer_budget"].get<int>();
  return config;
}

nlohmann::json summary_json(const SweepResult& result) {
  nlohmann::json j;
  j["config"] = config_to_json(result.config);
  nlohmann::json series = nlohmann::json::array();
  for (const auto& [key, stats] : aggregate_entropy(result.records)) {
    series.push_back({{"n", key.n},
                      {"p_or_t", key.p_or_t},
                      {"layer_or_time", key.layer_or_time},
                      {"mean_S", stats.mean},
                      {"stderr_S", stats.stderr_of_mean},
                      {"count", stats.count}});
  }
  j["series"] = series;
  auto stats_map = [](const std::map<int, SeriesStats>& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [n, stats] : m)
      out[std::to_string(n)] = {{"mean", stats.mean},
                                {"stderr", stats.stderr_of_mean},
                                {"count", stats.count}};
    return out;
  };
  if (!result.final_r_mean.empty())
    j["final_r_mean"] = stats_map(result.final_r_mean);
  if (!result.final_r_mean_blocks.empty())
    j["final_r_mean_blocks"] = stats_map(result.final_r_mean_blocks);
  if (!result.mean_final_spectrum.empty()) {
    nlohmann::json spectra = nlohmann::json::object();
    for (const auto& [n, values] : result.mean_final_spectrum)
      spectra[std::to_string(n)] =
          std::vector<double>(values.data(), values.data() + values.size());
    j["mean_final_spectrum"] = spectra;
  }
  return j;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << text;
}

}  // namespace

void emit_plot_data(const nlohmann::json& summary, const std::string& figure_id,
                    const std::string& output_dir) {
  const std::filesystem::path dir(output_dir);
  std::filesystem::create_directories(dir);
  if (figure_id == "fig2a") {
    if (!summary.contains("series"))
      throw std::invalid_argument("emit_plot_data: summary lacks series");
    std::map<int, std::map<double, std::pair<double, double>>> by_n;
    for (const auto& row : summary["series"])
      by_n[row["n"].get<int>()][row["layer_or_time"].get<double>()] = {
          row["mean_S"].get<double>(), row["stderr_S"].get<double>()};
    for (const auto& [n, rows] : by_n) {
      std::ostringstream os;
      os << "ell,S_mean,S_stderr\n";
      for (const auto& [ell, ms] : rows)
        os << format_double(ell) << ',' << format_double(ms.first) << ','
           << format_double(ms.second) << '\n';
      write_text_file(dir / ("fig2a_n" + std::to_string(n) + ".csv"), os.str());
    }
    return;
  }
  if (figure_id == "fig3d") {
    if (!summary.contains("mean_final_spectrum"))
      throw std::invalid_argument("emit_plot_data: summary lacks mean_final_spectrum");
    for (const auto& [n_str, values] : summary["mean_final_spectrum"].items()) {
      const auto spectrum = values.get<std::vector<double>>();
      const auto dim = static_cast<double>(spectrum.size());
      std::ostringstream os;
      os << "x,scaled_lambda2_mean,mp_reference\n";
      for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double x = static_cast<double>(k) / dim;
        os << format_double(x) << ',' << format_double(dim * spectrum[k]) << ','
           << format_double(marchenko_pastur_lambda2(x, 0)) << '\n';
      }
      write_text_file(dir / ("fig3d_n" + n_str + ".csv"), os.str());
    }
    return;
  }
  if (figure_id == "fig5g") {
    // expects the analyze --fit alpha output: {"b_of_T": {"2": ..}, "alpha": ..}
    if (!summary.contains("b_of_T"))
      throw std::invalid_argument("emit_plot_data: summary lacks b_of_T");
    std::map<double, double> rows;
    for (const auto& [t_str, b] : summary["b_of_T"].items())
      rows[std::stod(t_str)] = b.get<double>();
    std::ostringstream os;
    os << "T,b_of_T\n";
    for (const auto& [t, b] : rows)
      os << format_double(t) << ',' << format_double(b) << '\n';
    write_text_file(dir / "fig5g.csv", os.str());
    nlohmann::json meta;
    if (summary.contains("alpha")) meta["alpha"] = summary["alpha"];
    write_text_file(dir / "fig5g_meta.json", meta.dump(2) + "\n");
    return;
  }
  throw std::invalid_argument("emit_plot_data: unknown figure id " + figure_id);
}

}  // namespace qaoae
