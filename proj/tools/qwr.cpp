// qwr: classical and phase-generalized quantum PageRank on directed graphs.
//
// Subcommands:
//   generate   seeded random graphs (scale-free, erdos-renyi) to edge lists
//   rank       classical / quantum PageRank distributions for one graph
//   stability  fidelity-vs-damping curves and (alpha, alpha') heatmaps
//   powerlaw   log-log fits of the sorted distributions
//
// Exit codes: 0 success, 2 usage error, 3 numeric/convergence error, 4 I/O.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwr/analysis.hpp"
#include "qwr/classical.hpp"
#include "qwr/google.hpp"
#include "qwr/graph.hpp"
#include "qwr/io.hpp"
#include "qwr/parallel.hpp"
#include "qwr/qrank.hpp"
#include "qwr/svg.hpp"

namespace fs = std::filesystem;
using namespace qwr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct GraphSourceOptions {
  std::string graph_file;
  std::string model;
  int nodes = 32;
  std::uint64_t seed = 0;
  double p_edge = 0.1;
  ScaleFreeParams sf{};

  void attach(CLI::App* cmd, bool allow_file = true) {
    if (allow_file) cmd->add_option("--graph", graph_file, "edge-list file to load");
    cmd->add_option("--model", model, "generator: scale-free | erdos-renyi");
    cmd->add_option("--nodes", nodes, "node count for generated graphs");
    cmd->add_option("--seed", seed, "generator seed");
    cmd->add_option("--p", p_edge, "edge probability (erdos-renyi)");
    cmd->add_option("--p-alpha", sf.p_alpha, "scale-free: new-source event probability");
    cmd->add_option("--p-beta", sf.p_beta, "scale-free: internal-edge event probability");
    cmd->add_option("--p-gamma", sf.p_gamma, "scale-free: new-target event probability");
    cmd->add_option("--delta-in", sf.delta_in, "scale-free: in-degree offset");
    cmd->add_option("--delta-out", sf.delta_out, "scale-free: out-degree offset");
  }

  GeneratorConfig generator() const {
    GeneratorConfig config;
    if (model == "scale-free") {
      config.model = GeneratorConfig::Model::scale_free;
    } else if (model == "erdos-renyi") {
      config.model = GeneratorConfig::Model::erdos_renyi;
    } else {
      throw CLI::ValidationError("--model must be scale-free or erdos-renyi");
    }
    config.nodes = nodes;
    config.scale_free = sf;
    config.erdos_renyi.p_edge = p_edge;
    return config;
  }

  DirectedGraph load() const {
    if (!graph_file.empty()) return load_edge_list(graph_file);
    if (model.empty())
      throw CLI::ValidationError("either --graph or --model is required");
    return generate_graph(generator(), seed);
  }

  Json echo() const {
    Json j;
    if (!graph_file.empty()) {
      j["graph"] = graph_file;
    } else {
      j["model"] = model;
      j["nodes"] = nodes;
      j["seed"] = seed;
      if (model == "erdos-renyi") j["p"] = p_edge;
      if (model == "scale-free") {
        j["p_alpha"] = sf.p_alpha;
        j["p_beta"] = sf.p_beta;
        j["p_gamma"] = sf.p_gamma;
        j["delta_in"] = sf.delta_in;
        j["delta_out"] = sf.delta_out;
      }
    }
    return j;
  }
};

std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.10, stop = 0.99, step = 0.01;
  if (!spec.empty()) {
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
      throw CLI::ValidationError("--grid expects start:stop:step");
  }
  return make_alpha_grid(start, stop, step);
}

std::vector<AlgorithmSpec> parse_algorithms(const std::vector<std::string>& names,
                                            double theta) {
  std::vector<AlgorithmSpec> specs;
  for (const auto& name : names) {
    if (name == "classical") {
      specs.push_back({true, {}});
    } else if (name == "standard") {
      specs.push_back({false, {SchemeKind::standard, theta}});
    } else if (name == "equal") {
      specs.push_back({false, {SchemeKind::equal, theta}});
    } else if (name == "opposite") {
      specs.push_back({false, {SchemeKind::opposite, theta}});
    } else if (name == "alternate") {
      specs.push_back({false, {SchemeKind::alternate, theta}});
    } else {
      throw CLI::ValidationError("unknown algorithm \"" + name + "\"");
    }
  }
  return specs;
}

std::vector<std::string> all_algorithms() {
  return {"classical", "standard", "equal", "opposite", "alternate"};
}

long long default_T_for(int n) { return n <= 16 ? 4000 : 1000; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

int cmd_generate(const GraphSourceOptions& source, const std::string& output) {
  GeneratorConfig config = source.generator();
  DirectedGraph graph = generate_graph(config, source.seed);

  fs::path out = output;
  if (out.empty()) out = source.model + "_n" + std::to_string(source.nodes) + "_seed" +
                         std::to_string(source.seed) + ".edges";
  save_edge_list(graph, out);

  Json sidecar = make_envelope("generate", source.echo());
  sidecar["results"]["nodes"] = graph.node_count();
  sidecar["results"]["edges"] = graph.edge_count();
  sidecar["results"]["output"] = out.string();
  sidecar.erase("timing");  // keep reruns byte-identical
  write_json(out.string() + ".json", sidecar);
  std::cout << "wrote " << out.string() << " (" << graph.node_count() << " nodes, "
            << graph.edge_count() << " edges)\n";
  return kExitOk;
}

struct RankOptions {
  GraphSourceOptions source;
  bool classical = false;
  bool quantum = false;
  bool all_schemes = false;
  std::string scheme = "standard";
  std::string theta_text = "pi/2";
  double alpha = 0.85;
  long long T = 0;  // 0: pick by size
  double conv_tol = 1e-4;
  std::string out_dir = ".";
  bool emit_plots = false;
  bool emit_instantaneous = false;
  bool dump_google = false;
};

int cmd_rank(const RankOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  DirectedGraph graph = opt.source.load();
  const int n = graph.node_count();
  const double theta = parse_angle(opt.theta_text);
  const long long T = opt.T > 0 ? opt.T : default_T_for(n);

  std::vector<AlgorithmSpec> specs;
  if (opt.all_schemes) {
    specs = parse_algorithms(all_algorithms(), theta);
  } else {
    if (opt.classical) specs.push_back({true, {}});
    if (opt.quantum) {
      auto q = parse_algorithms({opt.scheme}, theta);
      specs.insert(specs.end(), q.begin(), q.end());
    }
    if (specs.empty()) throw CLI::ValidationError("pick --classical, --quantum or --all-schemes");
  }

  fs::create_directories(opt.out_dir);
  GoogleMatrix gm = build_google(graph, opt.alpha);
  if (opt.dump_google) csv::write_matrix(fs::path(opt.out_dir) / "google_matrix.csv", gm.g);

  Json config = opt.source.echo();
  config["alpha"] = opt.alpha;
  config["theta"] = theta;
  config["T"] = T;
  config["convergence_tol"] = opt.conv_tol;
  config["algorithms"] = Json::array();
  for (const auto& s : specs) config["algorithms"].push_back(s.label());
  Json envelope = make_envelope("rank", config);
  envelope["results"]["n"] = n;
  envelope["results"]["algorithms"] = Json::array();

  std::vector<std::string> labels;
  std::vector<Eigen::VectorXd> distributions;
  std::vector<std::string> q_labels;
  std::vector<Eigen::VectorXd> std_devs;

  for (const auto& spec : specs) {
    Json entry;
    entry["label"] = spec.label();
    entry["alpha"] = opt.alpha;
    Eigen::VectorXd values;
    if (spec.classical) {
      PageRankVector pr = classical_pagerank(gm);
      values = pr.values;
      entry["iterations"] = pr.iterations;
    } else {
      QuantumPageRankResult run = run_quantum_pagerank(gm, spec.scheme, T, opt.conv_tol);
      values = run.averaged.values;
      PhasePair phases = scheme_phase_map(spec.scheme);
      entry["theta"] = spec.scheme.theta;
      entry["phase_pair"] = {phases.theta1, phases.theta2};
      entry["T"] = T;
      entry["converged"] = run.converged;
      entry["final_drift"] = run.final_drift;
      entry["std_dev"] = to_json(run.std_dev);
      q_labels.push_back(spec.label());
      std_devs.push_back(run.std_dev);
      if (opt.emit_instantaneous) {
        std::vector<std::string> header{"t"};
        for (int i = 0; i < n; ++i) header.push_back("node" + std::to_string(i));
        Eigen::MatrixXd table(run.instantaneous.rows(), n + 1);
        for (Eigen::Index t = 0; t < table.rows(); ++t) table(t, 0) = double(t);
        table.rightCols(n) = run.instantaneous;
        csv::write_matrix(fs::path(opt.out_dir) / ("instantaneous_" + spec.label() + ".csv"),
                          table, header);
      }
    }
    entry["pagerank"] = to_json(values);
    entry["ranking"] = to_json(rank_nodes(values));
    envelope["results"]["algorithms"].push_back(entry);
    labels.push_back(spec.label());
    distributions.push_back(values);
  }

  std::vector<std::string> pr_header{"node"};
  std::vector<Eigen::VectorXd> pr_columns{
      Eigen::VectorXd::LinSpaced(n, 0, n - 1)};
  for (std::size_t s = 0; s < labels.size(); ++s) {
    pr_header.push_back(labels[s]);
    pr_columns.push_back(distributions[s]);
  }
  csv::write_columns(fs::path(opt.out_dir) / "pageranks.csv", pr_header, pr_columns);
  if (!q_labels.empty()) {
    std::vector<std::string> sd_header{"node"};
    std::vector<Eigen::VectorXd> sd_columns{Eigen::VectorXd::LinSpaced(n, 0, n - 1)};
    for (std::size_t s = 0; s < q_labels.size(); ++s) {
      sd_header.push_back(q_labels[s]);
      sd_columns.push_back(std_devs[s]);
    }
    csv::write_columns(fs::path(opt.out_dir) / "std_devs.csv", sd_header, sd_columns);
  }
  if (opt.emit_plots) {
    std::vector<std::string> node_labels;
    for (int i = 0; i < n; ++i) node_labels.push_back(std::to_string(i + 1));
    svg::write_bar_chart(fs::path(opt.out_dir) / "pageranks.svg", node_labels, labels,
                         distributions, "PageRank distributions", "importance");
    if (!q_labels.empty())
      svg::write_bar_chart(fs::path(opt.out_dir) / "std_devs.svg", node_labels, q_labels,
                           std_devs, "Instantaneous PageRank standard deviations", "std dev");
  }

  envelope["timing"]["seconds"] = seconds_since(t0);
  write_json(fs::path(opt.out_dir) / "envelope.json", envelope);
  std::cout << "rank: wrote " << (fs::path(opt.out_dir) / "envelope.json").string() << "\n";
  return kExitOk;
}

struct StabilityOptions {
  GraphSourceOptions source;
  std::vector<std::string> algorithms = all_algorithms();
  std::string theta_text = "pi/2";
  std::string grid_spec;
  double alpha_ref = 0.85;
  bool heatmap = false;
  long long T = 1000;
  double conv_tol = 1e-4;
  int ensemble = 0;
  std::uint64_t master_seed = 1;
  std::string out_dir = ".";
  bool emit_plots = false;
  int threads = 0;
};

int cmd_stability(const StabilityOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  const double theta = parse_angle(opt.theta_text);
  auto specs = parse_algorithms(opt.algorithms, theta);
  auto grid = parse_grid(opt.grid_spec);
  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  fs::create_directories(opt.out_dir);

  Json config = opt.source.echo();
  config["algorithms"] = opt.algorithms;
  config["theta"] = theta;
  config["grid"] = {grid.front(), grid.back(), grid.size()};
  config["alpha_ref"] = opt.alpha_ref;
  config["T"] = opt.T;
  config["heatmap"] = opt.heatmap;
  if (opt.ensemble > 0) {
    config["ensemble"] = opt.ensemble;
    config["master_seed"] = opt.master_seed;
  }
  Json envelope = make_envelope("stability", config);

  std::vector<Eigen::VectorXd> curves;
  std::vector<Eigen::MatrixXd> heatmaps;
  std::vector<int> non_converged(specs.size(), 0);

  if (opt.ensemble > 0) {
    EnsemblePipeline pipeline;
    pipeline.algorithms = specs;
    pipeline.T = opt.T;
    pipeline.convergence_tol = opt.conv_tol;
    pipeline.mean_sorted = false;
    pipeline.sweep = true;
    pipeline.heatmap = opt.heatmap;
    pipeline.grid = grid;
    pipeline.alpha_ref = opt.alpha_ref;
    EnsembleReport report =
        ensemble_run(opt.source.generator(), opt.ensemble, opt.master_seed, pipeline, threads);
    curves = report.mean_fidelity_curve;
    heatmaps = report.mean_heatmap;
    non_converged = report.non_converged;
  } else {
    DirectedGraph graph = opt.source.load();
    SweepOptions sweep_opts;
    sweep_opts.T = opt.T;
    sweep_opts.convergence_tol = opt.conv_tol;
    sweep_opts.threads = threads;
    for (const auto& spec : specs) {
      StabilityReport report = alpha_sweep(graph, spec, grid, opt.alpha_ref, sweep_opts,
                                           opt.heatmap);
      curves.push_back(report.fidelities);
      if (report.heatmap) heatmaps.push_back(*report.heatmap);
      int bad = 0;
      for (int f : report.non_converged) bad += f;
      non_converged[&spec - specs.data()] = bad;
    }
  }

  std::vector<std::string> header{"alpha"};
  std::vector<Eigen::VectorXd> columns{
      Eigen::Map<const Eigen::VectorXd>(grid.data(), grid.size())};
  for (std::size_t s = 0; s < specs.size(); ++s) {
    header.push_back(specs[s].label());
    columns.push_back(curves[s]);
  }
  csv::write_columns(fs::path(opt.out_dir) / "stability_curves.csv", header, columns);

  envelope["results"]["min_fidelity"] = Json::object();
  for (std::size_t s = 0; s < specs.size(); ++s) {
    envelope["results"]["min_fidelity"][specs[s].label()] = curves[s].minCoeff();
    envelope["results"]["non_converged_runs"][specs[s].label()] = non_converged[s];
  }

  if (!heatmaps.empty()) {
    for (std::size_t s = 0; s < specs.size(); ++s) {
      std::vector<std::string> hm_header{"alpha"};
      for (double a : grid) hm_header.push_back(format_g17(a));
      Eigen::MatrixXd table(grid.size(), grid.size() + 1);
      for (std::size_t a = 0; a < grid.size(); ++a) table(a, 0) = grid[a];
      table.rightCols(grid.size()) = heatmaps[s];
      csv::write_matrix(fs::path(opt.out_dir) / ("heatmap_" + specs[s].label() + ".csv"), table,
                        hm_header);
      envelope["results"]["heatmap_min"][specs[s].label()] = heatmaps[s].minCoeff();
      if (opt.emit_plots)
        svg::write_heatmap(fs::path(opt.out_dir) / ("heatmap_" + specs[s].label() + ".svg"),
                           grid, heatmaps[s], "fidelity heatmap: " + specs[s].label());
    }
  }
  if (opt.emit_plots) {
    std::vector<svg::Series> series;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      svg::Series sr;
      sr.name = specs[s].label();
      sr.x = grid;
      sr.y.assign(curves[s].data(), curves[s].data() + curves[s].size());
      series.push_back(std::move(sr));
    }
    svg::LineChartOptions chart;
    chart.title = "Fidelity vs damping";
    chart.xlabel = "alpha";
    chart.ylabel = "fidelity";
    svg::write_line_chart(fs::path(opt.out_dir) / "stability_curves.svg", series, chart);
  }

  envelope["timing"]["seconds"] = seconds_since(t0);
  write_json(fs::path(opt.out_dir) / "envelope.json", envelope);
  std::cout << "stability: wrote " << (fs::path(opt.out_dir) / "envelope.json").string() << "\n";
  return kExitOk;
}

struct PowerlawOptions {
  GraphSourceOptions source;
  std::vector<std::string> algorithms = all_algorithms();
  std::string theta_text = "pi/2";
  double alpha = 0.85;
  long long T = 1000;
  int ensemble = 0;
  std::uint64_t master_seed = 1;
  bool no_tail_cut = false;
  double rel_tol_classical = 1e-6;
  // The classical residual plateau is exact; the quantum schemes restore it
  // only partially, with the residual block spread over 0.1-0.35 of its
  // level, so the quantum detector needs a tolerance of that order.
  double rel_tol_quantum = 0.3;
  std::string out_dir = ".";
  bool emit_plots = false;
  int threads = 0;
};

int cmd_powerlaw(const PowerlawOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  const double theta = parse_angle(opt.theta_text);
  auto specs = parse_algorithms(opt.algorithms, theta);
  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  fs::create_directories(opt.out_dir);

  Json config = opt.source.echo();
  config["algorithms"] = opt.algorithms;
  config["theta"] = theta;
  config["alpha"] = opt.alpha;
  config["T"] = opt.T;
  config["tail_cut"] = !opt.no_tail_cut;
  config["rel_tol_classical"] = opt.rel_tol_classical;
  config["rel_tol_quantum"] = opt.rel_tol_quantum;
  if (opt.ensemble > 0) {
    config["ensemble"] = opt.ensemble;
    config["master_seed"] = opt.master_seed;
  }
  Json envelope = make_envelope("powerlaw", config);

  std::vector<Eigen::VectorXd> sorted_curves;
  if (opt.ensemble > 0) {
    EnsemblePipeline pipeline;
    pipeline.algorithms = specs;
    pipeline.alpha = opt.alpha;
    pipeline.T = opt.T;
    pipeline.mean_sorted = true;
    EnsembleReport report =
        ensemble_run(opt.source.generator(), opt.ensemble, opt.master_seed, pipeline, threads);
    sorted_curves = report.mean_sorted;
  } else {
    DirectedGraph graph = opt.source.load();
    SweepOptions sweep_opts;
    sweep_opts.T = opt.T;
    for (const auto& spec : specs) {
      Eigen::VectorXd values = pagerank_distribution(graph, spec, opt.alpha, sweep_opts);
      std::sort(values.data(), values.data() + values.size(), std::greater<double>());
      sorted_curves.push_back(values);
    }
  }

  std::vector<std::string> header{"rank"};
  const Eigen::Index n = sorted_curves[0].size();
  std::vector<Eigen::VectorXd> columns{Eigen::VectorXd::LinSpaced(n, 1, double(n))};
  std::vector<svg::Series> series;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    header.push_back(specs[s].label());
    columns.push_back(sorted_curves[s]);
    double rel_tol = specs[s].classical ? opt.rel_tol_classical : opt.rel_tol_quantum;
    // standard/equal walks break the residual degeneracy, so their
    // distributions carry no plateau and are fitted over all nodes
    const std::string label = specs[s].label();
    bool cut = !opt.no_tail_cut &&
               (label == "classical" || label == "opposite" || label == "alternate");
    PowerLawFit fit = powerlaw_fit(sorted_curves[s], cut, rel_tol);
    Json entry;
    entry["beta"] = fit.beta;
    entry["intercept"] = fit.intercept;
    entry["r_squared"] = fit.r_squared;
    entry["rel_tol"] = rel_tol;
    if (fit.cut_index) entry["cut_index"] = *fit.cut_index;
    envelope["results"]["fits"][specs[s].label()] = entry;

    svg::Series sr;
    sr.name = specs[s].label();
    for (Eigen::Index i = 0; i < n; ++i) {
      sr.x.push_back(double(i + 1));
      sr.y.push_back(sorted_curves[s][i]);
    }
    series.push_back(std::move(sr));
    if (opt.emit_plots) {
      svg::LineChartOptions chart;
      chart.title = "sorted PageRank: " + specs[s].label();
      chart.xlabel = "rank";
      chart.ylabel = "importance";
      chart.log_x = chart.log_y = true;
      chart.markers = true;
      chart.with_fit = true;
      chart.fit_slope = -fit.beta;
      chart.fit_intercept = fit.intercept;
      if (fit.cut_index) {
        chart.with_vline = true;
        chart.vline = double(*fit.cut_index + 1);
      }
      svg::write_line_chart(fs::path(opt.out_dir) / ("powerlaw_" + specs[s].label() + ".svg"),
                            {series.back()}, chart);
    }
  }
  csv::write_columns(fs::path(opt.out_dir) / "sorted_pageranks.csv", header, columns);

  envelope["timing"]["seconds"] = seconds_since(t0);
  write_json(fs::path(opt.out_dir) / "envelope.json", envelope);
  std::cout << "powerlaw: wrote " << (fs::path(opt.out_dir) / "envelope.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical and phase-generalized quantum PageRank"};
  app.require_subcommand(1);

  GraphSourceOptions gen_source;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "write a seeded random graph as an edge list");
  gen_source.attach(gen, /*allow_file=*/false);
  gen->add_option("-o,--output", gen_output, "output edge-list path");

  RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "compute PageRank distributions");
  rank.source.attach(rank_cmd);
  rank_cmd->add_flag("--classical", rank.classical, "run the classical algorithm");
  rank_cmd->add_flag("--quantum", rank.quantum, "run one quantum scheme");
  rank_cmd->add_flag("--all-schemes", rank.all_schemes,
                     "classical plus all four quantum schemes");
  rank_cmd->add_option("--scheme", rank.scheme, "standard | equal | opposite | alternate");
  rank_cmd->add_option("--theta", rank.theta_text, "phase (radians, or pi, pi/2, ...)");
  rank_cmd->add_option("--alpha", rank.alpha, "damping parameter");
  rank_cmd->add_option("--T", rank.T, "averaging horizon (0 = auto)");
  rank_cmd->add_option("--conv-tol", rank.conv_tol, "running-average drift tolerance");
  rank_cmd->add_option("--out-dir", rank.out_dir, "output directory");
  rank_cmd->add_flag("--emit-plots", rank.emit_plots, "also write SVG charts");
  rank_cmd->add_flag("--emit-instantaneous", rank.emit_instantaneous,
                     "write instantaneous series CSVs");
  rank_cmd->add_flag("--dump-google", rank.dump_google, "dump the Google matrix as CSV");

  StabilityOptions stability;
  auto* stab_cmd = app.add_subcommand("stability", "fidelity vs damping parameter");
  stability.source.attach(stab_cmd);
  stab_cmd->add_option("--algorithms", stability.algorithms,
                       "subset of classical,standard,equal,opposite,alternate")
      ->delimiter(',');
  stab_cmd->add_option("--theta", stability.theta_text, "phase for the APR schemes");
  stab_cmd->add_option("--grid", stability.grid_spec, "alpha grid start:stop:step");
  stab_cmd->add_option("--alpha-ref", stability.alpha_ref, "reference damping value");
  stab_cmd->add_flag("--heatmap", stability.heatmap, "also compute (alpha, alpha') matrices");
  stab_cmd->add_option("--T", stability.T, "averaging horizon for quantum runs");
  stab_cmd->add_option("--ensemble", stability.ensemble, "number of generated graphs");
  stab_cmd->add_option("--master-seed", stability.master_seed, "ensemble master seed");
  stab_cmd->add_option("--out-dir", stability.out_dir, "output directory");
  stab_cmd->add_flag("--emit-plots", stability.emit_plots, "also write SVG charts");
  stab_cmd->add_option("--threads", stability.threads, "worker bound (default QWR_THREADS)");

  PowerlawOptions powerlaw;
  auto* pl_cmd = app.add_subcommand("powerlaw", "fit sorted distributions to a power law");
  powerlaw.source.attach(pl_cmd);
  pl_cmd->add_option("--algorithms", powerlaw.algorithms, "subset of algorithms")->delimiter(',');
  pl_cmd->add_option("--theta", powerlaw.theta_text, "phase for the APR schemes");
  pl_cmd->add_option("--alpha", powerlaw.alpha, "damping parameter");
  pl_cmd->add_option("--T", powerlaw.T, "averaging horizon for quantum runs");
  pl_cmd->add_option("--ensemble", powerlaw.ensemble, "number of generated graphs");
  pl_cmd->add_option("--master-seed", powerlaw.master_seed, "ensemble master seed");
  pl_cmd->add_flag("--no-tail-cut", powerlaw.no_tail_cut, "fit over all nodes");
  pl_cmd->add_option("--rel-tol-classical", powerlaw.rel_tol_classical,
                     "plateau tolerance, classical");
  pl_cmd->add_option("--rel-tol-quantum", powerlaw.rel_tol_quantum,
                     "plateau tolerance, quantum");
  pl_cmd->add_option("--out-dir", powerlaw.out_dir, "output directory");
  pl_cmd->add_flag("--emit-plots", powerlaw.emit_plots, "also write SVG charts");
  pl_cmd->add_option("--threads", powerlaw.threads, "worker bound (default QWR_THREADS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_source, gen_output);
    if (rank_cmd->parsed()) return cmd_rank(rank);
    if (stab_cmd->parsed()) return cmd_stability(stability);
    if (pl_cmd->parsed()) return cmd_powerlaw(powerlaw);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const convergence_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const integrity_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
