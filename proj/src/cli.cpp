#include "qaoae/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qaoae/experiments.hpp"
#include "qaoae/selftest.hpp"

namespace qaoae {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buffer;
}

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  json j;
  is >> j;
  return j;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << j.dump(2) << '\n';
}

// Accepts either a bare config document or a manifest with a "config" key,
// so a manifest replays directly.
ExperimentConfig load_config(const std::string& path) {
  const json j = load_json_file(path);
  return config_from_json(j.contains("config") ? j["config"] : j);
}

int env_threads() {
  if (const char* env = std::getenv("QAOAE_THREADS")) return std::atoi(env);
  return 0;
}

struct SweepCli {
  std::string config_path;
  std::string graph;
  std::vector<int> sizes;
  int depth = -1;
  std::vector<int> depths;
  std::vector<double> times;
  double dt = -1.0;
  int problems = -1;
  int restarts = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string bipartition;
  int threads = -1;
  int measure_every = -1;
  bool blocks = false;
  std::string preset;
  std::string output = ".";
};

void add_sweep_options(CLI::App* cmd, SweepCli& opts, Mode mode) {
  cmd->add_option("--config", opts.config_path, "JSON config (or manifest) to start from");
  cmd->add_option("--graph", opts.graph, "linear|regular3|complete");
  cmd->add_option("--sizes", opts.sizes, "qubit counts, comma separated")
      ->delimiter(',');
  if (mode == Mode::kRandomized)
    cmd->add_option("--depth", opts.depth, "number of randomized layers");
  if (mode == Mode::kOptimized) {
    cmd->add_option("--depth", opts.depths, "circuit depths p, comma separated")
        ->delimiter(',');
    cmd->add_option("--restarts", opts.restarts, "multistart count per problem");
  }
  if (mode == Mode::kAnnealing) {
    cmd->add_option("--time-list", opts.times, "total times T, comma separated")
        ->delimiter(',');
    cmd->add_option("--dt", opts.dt, "time step");
  }
  cmd->add_option("--problems", opts.problems, "ensemble size");
  cmd->add_option("--seed", opts.seed, "master seed")->each([&opts](const std::string&) {
    opts.seed_given = true;
  });
  cmd->add_option("--bipartition", opts.bipartition, "auto|contiguous|random");
  cmd->add_option("--threads", opts.threads, "worker cap (0 = auto)");
  cmd->add_option("--measure-every", opts.measure_every, "entropy every k layers");
  if (mode == Mode::kRandomized)
    cmd->add_flag("--blocks", opts.blocks, "also resolve symmetry-block gap ratios");
  cmd->add_option("--preset", opts.preset, "desk|paper parameter bundle");
  cmd->add_option("--output", opts.output, "output directory");
}

void apply_preset(ExperimentConfig& config, const std::string& preset, Mode mode) {
  if (preset.empty()) return;
  if (preset == "desk") {
    switch (mode) {
      case Mode::kRandomized:
        config.n_problems = 200;
        if (config.depth == 0) config.depth = 30;
        break;
      case Mode::kOptimized:
        config.n_problems = 30;
        config.restarts = 100;
        break;
      case Mode::kAnnealing:
        config.n_problems = 100;
        break;
    }
    return;
  }
  if (preset == "paper") {
    switch (mode) {
      case Mode::kRandomized:
        config.n_problems = 1000;
        break;
      case Mode::kOptimized:
        config.n_problems = 100;
        config.restarts = 1000;
        break;
      case Mode::kAnnealing:
        config.n_problems = 1000;
        break;
    }
    return;
  }
  throw std::invalid_argument("unknown preset: " + preset);
}

ExperimentConfig build_config(const SweepCli& opts, Mode mode) {
  ExperimentConfig config;
  config.mode = mode;
  if (mode == Mode::kRandomized) {
    config.measure_gap_ratios = true;
    config.measure_spectrum = true;
  }
  apply_preset(config, opts.preset, mode);
  if (!opts.config_path.empty()) {
    const ExperimentConfig loaded = load_config(opts.config_path);
    config = loaded;
    config.mode = mode;
    apply_preset(config, opts.preset, mode);
  }
  if (!opts.graph.empty()) config.graph_kind = graph_kind_from_name(opts.graph);
  if (!opts.sizes.empty()) config.sizes = opts.sizes;
  if (opts.depth >= 0) config.depth = opts.depth;
  if (!opts.depths.empty()) config.depths = opts.depths;
  if (!opts.times.empty()) config.times = opts.times;
  if (opts.dt > 0.0) config.dt = opts.dt;
  if (opts.problems >= 0) config.n_problems = opts.problems;
  if (opts.restarts >= 0) config.restarts = opts.restarts;
  if (opts.seed_given) config.master_seed = opts.seed;
  if (!opts.bipartition.empty()) {
    if (opts.bipartition == "auto")
      config.bipartition = BipartitionPolicy::kAuto;
    else if (opts.bipartition == "contiguous")
      config.bipartition = BipartitionPolicy::kContiguous;
    else if (opts.bipartition == "random")
      config.bipartition = BipartitionPolicy::kRandom;
    else
      throw std::invalid_argument("unknown bipartition policy: " + opts.bipartition);
  }
  if (opts.threads >= 0)
    config.threads = opts.threads;
  else if (config.threads == 0)
    config.threads = env_threads();
  if (opts.measure_every >= 1) config.measure_every = opts.measure_every;
  if (opts.blocks) config.measure_block_ratios = true;
  return config;
}

void write_manifest(const fs::path& dir, const std::string& subcommand,
                    const ExperimentConfig& config) {
  json manifest;
  manifest["tool"] = "qaoae";
  manifest["subcommand"] = subcommand;
  manifest["config"] = config_to_json(config);
  manifest["generated_at"] = timestamp();
  write_json_file(dir / "manifest.json", manifest);
}

int run_sweep_command(const SweepCli& opts, Mode mode, const std::string& name) {
  const ExperimentConfig config = build_config(opts, mode);
  validate(config);
  const fs::path dir(opts.output);
  fs::create_directories(dir);
  const SweepResult result = run_sweep(config);
  {
    std::ofstream os(dir / "records.csv");
    if (!os) throw std::runtime_error("cannot open records.csv");
    write_records_csv(os, result.records);
  }
  write_json_file(dir / "summary.json", summary_json(result));
  write_manifest(dir, name, config);
  std::cout << name << ": " << result.records.size() << " records -> "
            << dir.string() << '\n';
  return 0;
}

int run_gen_graphs(const SweepCli& opts) {
  ExperimentConfig config = build_config(opts, Mode::kRandomized);
  if (config.sizes.empty()) throw std::invalid_argument("gen-graphs: need --sizes");
  if (config.n_problems < 1) throw std::invalid_argument("gen-graphs: need --problems");
  const fs::path dir = fs::path(opts.output) / "graphs";
  fs::create_directories(dir);
  int written = 0;
  for (int n : config.sizes) {
    for (int pid = 0; pid < config.n_problems; ++pid) {
      const ProblemSeeds seeds = derive_seeds(config.master_seed, n, pid);
      Graph g;
      switch (config.graph_kind) {
        case GraphKind::kLinear: g = gen_linear(n, seeds.graph); break;
        case GraphKind::kRegular3: g = gen_regular3(n, seeds.graph); break;
        case GraphKind::kComplete: g = gen_complete(n, seeds.graph); break;
      }
      std::ostringstream name;
      name << graph_kind_name(config.graph_kind) << "_n" << n << "_p" << pid
           << ".json";
      write_json_file(dir / name.str(), graph_to_json(g));
      ++written;
    }
  }
  write_manifest(fs::path(opts.output), "gen-graphs", config);
  std::cout << "gen-graphs: " << written << " instances -> " << dir.string() << '\n';
  return 0;
}

int run_graph_stats(const SweepCli& opts) {
  ExperimentConfig config = build_config(opts, Mode::kRandomized);
  if (config.sizes.empty()) throw std::invalid_argument("graph-stats: need --sizes");
  const fs::path dir(opts.output);
  fs::create_directories(dir);
  std::ofstream os(dir / "graph_stats.csv");
  os << "graph_kind,N,problems,asp_mean,asp_stderr\n";
  for (int n : config.sizes) {
    double sum = 0.0, sumsq = 0.0;
    for (int pid = 0; pid < config.n_problems; ++pid) {
      const ProblemSeeds seeds = derive_seeds(config.master_seed, n, pid);
      Graph g;
      switch (config.graph_kind) {
        case GraphKind::kLinear: g = gen_linear(n, seeds.graph); break;
        case GraphKind::kRegular3: g = gen_regular3(n, seeds.graph); break;
        case GraphKind::kComplete: g = gen_complete(n, seeds.graph); break;
      }
      const double asp = avg_shortest_path(g);
      sum += asp;
      sumsq += asp * asp;
    }
    const double mean = sum / config.n_problems;
    double stderr_of_mean = 0.0;
    if (config.n_problems > 1) {
      const double var =
          (sumsq - config.n_problems * mean * mean) / (config.n_problems - 1);
      stderr_of_mean = std::sqrt(std::max(0.0, var) / config.n_problems);
    }
    os << graph_kind_name(config.graph_kind) << ',' << n << ','
       << config.n_problems << ',' << mean << ',' << stderr_of_mean << '\n';
  }
  write_manifest(dir, "graph-stats", config);
  std::cout << "graph-stats -> " << (dir / "graph_stats.csv").string() << '\n';
  return 0;
}

struct AnalyzeCli {
  std::string input;
  std::string fit;
  std::string figure;
  std::vector<double> window;
  std::string output = ".";
};

std::map<SeriesKey, SeriesStats> load_series(const std::string& input) {
  std::ifstream is(input);
  if (!is) throw std::runtime_error("cannot open " + input);
  return aggregate_entropy(read_records_csv(is));
}

json fit_to_json(const FitResult& fit) {
  return {{"intercept", fit.intercept},
          {"slope", fit.slope},
          {"residual_norm", fit.residual_norm},
          {"n_points", fit.n_points}};
}

// Saturated (trailing-window) mean entropy per N, then a linear fit in N.
json analyze_page(const std::map<SeriesKey, SeriesStats>& series) {
  std::map<int, std::vector<double>> trajectories;
  for (const auto& [key, stats] : series) trajectories[key.n].push_back(stats.mean);
  std::vector<double> ns, sats;
  json per_n = json::object();
  for (const auto& [n, trajectory] : trajectories) {
    const auto sat = saturation_mean(trajectory);
    if (!sat)
      throw std::runtime_error(
          "analyze page: trajectory for N=" + std::to_string(n) +
          " has not saturated (trailing drift > 1%)");
    ns.push_back(n);
    sats.push_back(*sat);
    per_n[std::to_string(n)] = *sat;
  }
  if (ns.size() < 2)
    throw std::runtime_error("analyze page: need at least two sizes");
  const FitResult fit =
      linear_fit(Eigen::Map<Eigen::VectorXd>(ns.data(), ns.size()),
                 Eigen::Map<Eigen::VectorXd>(sats.data(), sats.size()));
  json out;
  out["fit"] = fit_to_json(fit);
  out["saturated_S"] = per_n;
  out["reference"] = {{"page_slope", std::numbers::ln2 / 2.0},
                      {"page_intercept", -0.5}};
  return out;
}

// Power fit of the mean entropy against layer (or time) inside a window.
json analyze_power(const std::map<SeriesKey, SeriesStats>& series, double lo,
                   double hi) {
  std::vector<double> xs, ys;
  for (const auto& [key, stats] : series) {
    if (key.layer_or_time < lo - 1e-9 || key.layer_or_time > hi + 1e-9) continue;
    if (key.layer_or_time <= 0.0 || stats.mean <= 0.0) continue;
    xs.push_back(key.layer_or_time);
    ys.push_back(stats.mean);
  }
  const FitResult fit =
      power_fit(Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size()),
                Eigen::Map<Eigen::VectorXd>(ys.data(), ys.size()));
  json out;
  out["fit"] = fit_to_json(fit);
  out["exponent"] = fit.slope;
  out["window"] = {lo, hi};
  return out;
}

// Per T: peak of the mean trajectory per N, linear fit in N; then the
// decay exponent of b(T).
json analyze_alpha(const std::map<SeriesKey, SeriesStats>& series) {
  std::map<double, std::map<int, double>> peak;  // T -> n -> max mean S
  for (const auto& [key, stats] : series) {
    double& value = peak[key.p_or_t][key.n];
    value = std::max(value, stats.mean);
  }
  std::vector<double> ts, bs;
  json b_of_t = json::object();
  json fits = json::object();
  for (const auto& [t, by_n] : peak) {
    if (by_n.size() < 2) continue;
    std::vector<double> ns, maxs;
    for (const auto& [n, value] : by_n) {
      ns.push_back(n);
      maxs.push_back(value);
    }
    const FitResult fit =
        linear_fit(Eigen::Map<Eigen::VectorXd>(ns.data(), ns.size()),
                   Eigen::Map<Eigen::VectorXd>(maxs.data(), maxs.size()));
    std::ostringstream key;
    key << t;
    b_of_t[key.str()] = fit.slope;
    fits[key.str()] = fit_to_json(fit);
    ts.push_back(t);
    bs.push_back(fit.slope);
  }
  if (ts.size() < 3)
    throw std::runtime_error("analyze alpha: need at least three T values");
  const FitResult decay =
      power_fit(Eigen::Map<Eigen::VectorXd>(ts.data(), ts.size()),
                Eigen::Map<Eigen::VectorXd>(bs.data(), bs.size()));
  json out;
  out["b_of_T"] = b_of_t;
  out["volume_fits"] = fits;
  out["alpha"] = -decay.slope;
  out["decay_fit"] = fit_to_json(decay);
  return out;
}

int run_analyze(const AnalyzeCli& opts) {
  const fs::path dir(opts.output);
  fs::create_directories(dir);
  if (!opts.figure.empty()) {
    emit_plot_data(load_json_file(opts.input), opts.figure, opts.output);
    std::cout << "analyze: wrote " << opts.figure << " series -> " << dir.string()
              << '\n';
    return 0;
  }
  if (opts.fit.empty())
    throw std::invalid_argument("analyze: need --fit or --figure");
  const auto series = load_series(opts.input);
  json out;
  if (opts.fit == "page") {
    out = analyze_page(series);
  } else if (opts.fit == "growth" || opts.fit == "kappa") {
    double lo = opts.fit == "growth" ? 4.0 : 0.5;
    double hi = opts.fit == "growth" ? 60.0 : 2.0;
    if (opts.window.size() == 2) {
      lo = opts.window[0];
      hi = opts.window[1];
    }
    out = analyze_power(series, lo, hi);
  } else if (opts.fit == "alpha") {
    out = analyze_alpha(series);
  } else {
    throw std::invalid_argument("analyze: unknown fit " + opts.fit);
  }
  out["input"] = opts.input;
  const fs::path path = dir / ("fit_" + opts.fit + ".json");
  write_json_file(path, out);
  std::cout << "analyze: " << out["fit"].dump() << " -> " << path.string() << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"MaxCut QAOA / annealing entanglement toolkit"};
  app.require_subcommand(1);

  SweepCli randomized_opts, optimized_opts, anneal_opts, gen_opts, stats_opts;
  AnalyzeCli analyze_opts;

  CLI::App* randomized = app.add_subcommand("randomized", "randomized-circuit sweep");
  add_sweep_options(randomized, randomized_opts, Mode::kRandomized);
  CLI::App* optimized = app.add_subcommand("optimized", "optimized-circuit sweep");
  add_sweep_options(optimized, optimized_opts, Mode::kOptimized);
  CLI::App* anneal = app.add_subcommand("anneal", "annealing-schedule sweep");
  add_sweep_options(anneal, anneal_opts, Mode::kAnnealing);
  CLI::App* gen_graphs = app.add_subcommand("gen-graphs", "write problem instances");
  add_sweep_options(gen_graphs, gen_opts, Mode::kRandomized);
  CLI::App* graph_stats =
      app.add_subcommand("graph-stats", "ensemble shortest-path statistics");
  add_sweep_options(graph_stats, stats_opts, Mode::kRandomized);

  CLI::App* analyze = app.add_subcommand("analyze", "fits and plot series");
  analyze->add_option("--input", analyze_opts.input, "records.csv or summary.json")
      ->required();
  analyze->add_option("--fit", analyze_opts.fit, "page|growth|kappa|alpha");
  analyze->add_option("--figure", analyze_opts.figure, "fig2a|fig3d|fig5g");
  analyze->add_option("--window", analyze_opts.window, "fit window lo,hi")
      ->delimiter(',');
  analyze->add_option("--output", analyze_opts.output, "output directory");

  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "oracle-equivalence and invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(randomized))
      return run_sweep_command(randomized_opts, Mode::kRandomized, "randomized");
    if (app.got_subcommand(optimized))
      return run_sweep_command(optimized_opts, Mode::kOptimized, "optimized");
    if (app.got_subcommand(anneal))
      return run_sweep_command(anneal_opts, Mode::kAnnealing, "anneal");
    if (app.got_subcommand(gen_graphs)) return run_gen_graphs(gen_opts);
    if (app.got_subcommand(graph_stats)) return run_graph_stats(stats_opts);
    if (app.got_subcommand(analyze)) return run_analyze(analyze_opts);
    if (app.got_subcommand(selftest_cmd))
      return selftest(std::cout) ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qaoae
