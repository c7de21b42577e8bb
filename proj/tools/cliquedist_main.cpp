// cliquedist: clique size and composition distribution estimation from
// egonet samples, plus whole-graph census and sweep evaluation tooling.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliquedist/egonet_io.hpp"
#include "cliquedist/error.hpp"
#include "cliquedist/estimators.hpp"
#include "cliquedist/evaluation.hpp"
#include "cliquedist/executor.hpp"
#include "cliquedist/graph.hpp"
#include "cliquedist/sampling.hpp"
#include "cliquedist/version.hpp"

#include "svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cliquedist;

namespace {

struct Manifest {
  json doc;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  fs::path out_dir;

  Manifest(const std::string& command, const fs::path& dir) : out_dir(dir) {
    doc["command"] = command;
    doc["version"] = kVersion;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    doc["started_at"] = buf;
  }

  void finish(std::vector<std::string> outputs) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    doc["duration_seconds"] =
        std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
    doc["outputs"] = std::move(outputs);
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw IoError("cannot write manifest in " + out_dir.string());
    out << doc.dump(2) << '\n';
  }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

std::unordered_map<OriginalId, double> load_weight_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open weight file: " + path);
  std::unordered_map<OriginalId, double> weights;
  std::string line;
  std::uint64_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (first) {
      first = false;
      if (line.rfind("node_id", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("weight rows are 'node_id,weight'", line_no);
    }
    try {
      weights[std::stoull(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("bad weight row '" + line + "'", line_no);
    }
  }
  if (weights.empty()) throw ParseError("weight file " + path + " is empty");
  return weights;
}

// Flags shared by the sampling commands.
struct DesignFlags {
  std::string kind = "uis";
  std::string replacement = "without";
  std::uint64_t draws = 0;
  std::uint64_t population_override = 0;
  std::string weights;  // "degree" or a node_id,weight CSV path
  std::string weight_mode = "exact";

  void attach(CLI::App* cmd, bool with_draws = true) {
    cmd->add_option("--design", kind, "Sampling design: uis|wis")
        ->check(CLI::IsMember({"uis", "wis"}));
    cmd->add_option("--replacement", replacement, "with|without replacement")
        ->check(CLI::IsMember({"with", "without"}));
    if (with_draws) cmd->add_option("--draws", draws, "Total ego draws n'");
    cmd->add_option("--N", population_override,
                    "Population size override (required without a graph)");
    cmd->add_option("--weights", weights,
                    "WIS weights: 'degree' or a node_id,weight CSV");
    cmd->add_option("--weight-mode", weight_mode,
                    "exact|proportional (proportional triggers Hansen-Hurwitz)")
        ->check(CLI::IsMember({"exact", "proportional"}));
  }

  json to_json() const {
    return {{"design", kind},
            {"replacement", replacement},
            {"draws", draws},
            {"N", population_override},
            {"weights", weights},
            {"weight_mode", weight_mode}};
  }

  SamplingDesign build(std::uint64_t n_prime, std::uint64_t population,
                       const Graph* g) const {
    const auto repl = replacement == "with" ? Replacement::with_replacement
                                            : Replacement::without_replacement;
    if (kind == "uis") return SamplingDesign::uis(repl, n_prime, population);
    const auto mode = weight_mode == "proportional" ? WeightMode::proportional_only
                                                    : WeightMode::exact_probabilities;
    if (weights == "degree") {
      if (!g) throw UsageError("--weights degree needs the graph (--edges)");
      auto d = SamplingDesign::wis_degree(repl, n_prime, *g, mode);
      d.population = population;
      return d;
    }
    if (weights.empty()) throw UsageError("WIS design needs --weights");
    return SamplingDesign::wis(repl, n_prime, population, load_weight_csv(weights),
                               mode);
  }
};

EnumMode parse_mode(const std::string& mode) {
  return mode == "all" ? EnumMode::all_up_to_order : EnumMode::maximal;
}

// Applies Hansen-Hurwitz when the sample's design has proportional weights.
void augment_proportional(EgonetSample& sample) {
  if (sample.design.kind != DesignKind::wis ||
      sample.design.weight_mode != WeightMode::proportional_only) {
    return;
  }
  std::vector<std::pair<OriginalId, std::uint32_t>> observed;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    observed.emplace_back(sample.egonets[i].ego_id, sample.multiplicities[i]);
  }
  sample.design = approximate_draw_probs(sample.design, observed).design;
}

int run_census(const std::string& edges, const std::string& attributes,
               const std::string& mode, std::uint32_t max_order, std::uint64_t budget,
               unsigned workers, const std::string& out_dir) {
  fs::create_directories(out_dir);
  Manifest manifest("census", out_dir);
  manifest.doc["config"] = {{"edges", edges},     {"attributes", attributes},
                            {"mode", mode},       {"max_order", max_order},
                            {"budget", budget},   {"workers", workers}};

  const auto loaded = load_graph_file(
      edges, attributes.empty() ? std::nullopt : std::optional<std::string>(attributes));
  if (loaded.stats.duplicate_edges_dropped || loaded.stats.self_loops_dropped) {
    std::cerr << "cleaned input: " << loaded.stats.duplicate_edges_dropped
              << " duplicate edges, " << loaded.stats.self_loops_dropped
              << " self loops dropped\n";
  }
  manifest.doc["graph"] = {{"nodes", loaded.graph.node_count()},
                           {"edges", loaded.graph.edge_count()}};

  Executor exec(workers);
  CensusOptions opts;
  opts.mode = parse_mode(mode);
  if (max_order > 0) opts.max_order = max_order;
  opts.budget = budget;
  opts.executor = &exec;
  const auto result = census(loaded.graph, opts);

  std::vector<std::string> outputs;
  {
    std::ofstream out(fs::path(out_dir) / "census.csv");
    write_census_csv(result, out);
    outputs.push_back("census.csv");
  }
  if (!result.by_composition.empty()) {
    std::ofstream out(fs::path(out_dir) / "census_compositions.csv");
    write_composition_csv(result, out);
    outputs.push_back("census_compositions.csv");
    json names = json::array();
    for (const auto& name : loaded.graph.category_names()) names.push_back(name);
    manifest.doc["categories"] = std::move(names);
  }
  manifest.doc["total_cliques"] = result.total_cliques;
  manifest.doc["max_order"] = result.max_order;
  manifest.finish(std::move(outputs));

  std::cout << "cliques: " << result.total_cliques
            << ", max order: " << result.max_order << '\n';
  return 0;
}

int run_estimate(const std::string& egonets, const std::string& edges,
                 const std::string& attributes, const DesignFlags& design_flags,
                 const std::string& estimator, bool unlabeled, std::uint64_t seed,
                 const std::string& mode, std::uint32_t max_order,
                 std::uint64_t pool_cap, double threshold,
                 const std::string& save_sample, unsigned workers,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  Manifest manifest("estimate", out_dir);
  manifest.doc["config"] = {{"egonets", egonets},   {"edges", edges},
                            {"attributes", attributes}, {"estimator", estimator},
                            {"unlabeled", unlabeled},   {"seed", seed},
                            {"mode", mode},             {"max_order", max_order},
                            {"pool_cap", pool_cap},     {"threshold", threshold},
                            {"workers", workers}};
  manifest.doc["config"].update(design_flags.to_json());

  Executor exec(workers);
  std::optional<Graph> graph;
  if (!edges.empty()) {
    graph = load_graph_file(edges, attributes.empty()
                                       ? std::nullopt
                                       : std::optional<std::string>(attributes))
                .graph;
  }

  EgonetSample sample;
  if (!egonets.empty()) {
    sample = read_egonet_sample_file(egonets);
    // flags override the file header
    if (design_flags.draws > 0) {
      sample.draws = design_flags.draws;
      sample.design.draws = design_flags.draws;
    }
    std::uint64_t population = design_flags.population_override > 0
                                   ? design_flags.population_override
                                   : sample.design.population;
    if (population == 0 && graph) population = graph->node_count();
    if (population == 0) {
      throw UsageError(
          "population size unknown: pass --N (or a header design with N)");
    }
    if (design_flags.kind == "wis" || !design_flags.weights.empty()) {
      sample.design = design_flags.build(sample.draws, population,
                                         graph ? &*graph : nullptr);
    } else {
      sample.design.population = population;
      sample.design.draws = sample.draws;
    }
    augment_proportional(sample);
  } else {
    if (!graph) throw UsageError("estimate needs --egonets or --edges");
    if (design_flags.draws == 0) throw UsageError("--draws is required with --edges");
    const std::uint64_t population = design_flags.population_override > 0
                                         ? design_flags.population_override
                                         : graph->node_count();
    const auto design = design_flags.build(design_flags.draws, population, &*graph);
    sample = draw_sample(*graph, design, seed, !unlabeled);
    augment_proportional(sample);
  }

  if (!save_sample.empty()) {
    std::ofstream out(save_sample);
    if (!out) throw IoError("cannot write sample to " + save_sample);
    write_egonet_sample(sample, out);
  }

  ProfileOptions popts;
  popts.mode = parse_mode(mode);
  if (max_order > 0) popts.max_order = max_order;
  const auto profiles = profile_sample(sample, popts, &exec);

  // estimator selection
  std::string chosen = estimator;
  if (estimator == "cc" && !sample.labeled) {
    throw UsageError("--estimator cc requires a labeled sample");
  }
  if (estimator == "auto") {
    if (!sample.labeled) {
      chosen = "cds";
    } else {
      const auto metrics =
          graph ? saturation_metrics(sample, *graph) : saturation_metrics(sample);
      chosen = recommend_estimator(metrics, sample.labeled, threshold) ==
                       EstimatorChoice::cc
                   ? "cc"
                   : "cds";
      manifest.doc["heuristic"] = {{"avg_edge_count", metrics.avg_edge_count},
                                   {"threshold", threshold},
                                   {"chosen", chosen}};
    }
  }

  const auto estimates = chosen == "cc" ? estimate_cc_all(sample, profiles, pool_cap)
                                        : estimate_cds_all(sample, profiles);

  json out_doc;
  out_doc["estimator"] = chosen;
  out_doc["design"] = design_digest(sample.design);
  out_doc["estimates"] = estimates_to_json(estimates, sample);
  write_file(fs::path(out_dir) / "estimates.json", out_doc.dump(2) + "\n");
  manifest.doc["n"] = sample.size();
  manifest.doc["n_prime"] = sample.draws;
  manifest.finish({"estimates.json"});

  std::cout << "wrote " << estimates.size() << " estimates (" << chosen << ") to "
            << (fs::path(out_dir) / "estimates.json").string() << '\n';
  return 0;
}

int run_recommend(const std::string& egonets, const std::string& edges,
                  const DesignFlags& design_flags, std::uint64_t seed, double threshold,
                  const std::string& out_dir) {
  fs::create_directories(out_dir);
  Manifest manifest("recommend", out_dir);
  manifest.doc["config"] = {{"egonets", egonets},
                            {"edges", edges},
                            {"seed", seed},
                            {"threshold", threshold}};
  manifest.doc["config"].update(design_flags.to_json());

  std::optional<Graph> graph;
  if (!edges.empty()) graph = load_graph_file(edges).graph;

  EgonetSample sample;
  if (!egonets.empty()) {
    sample = read_egonet_sample_file(egonets);
  } else {
    if (!graph) throw UsageError("recommend needs --egonets or --edges");
    if (design_flags.draws == 0) throw UsageError("--draws is required with --edges");
    const auto design =
        design_flags.build(design_flags.draws, graph->node_count(), &*graph);
    sample = draw_sample(*graph, design, seed, true);
  }

  json doc;
  doc["labeled"] = sample.labeled;
  doc["threshold"] = threshold;
  std::string verdict = "cds";
  if (!sample.labeled && !graph) {
    doc["metrics"] = nullptr;  // no unions without labels; CDS is the only option
  } else {
    const auto metrics =
        graph ? saturation_metrics(sample, *graph) : saturation_metrics(sample);
    doc["metrics"] = saturation_to_json(metrics);
    verdict = recommend_estimator(metrics, sample.labeled, threshold) ==
                      EstimatorChoice::cc
                  ? "cc"
                  : "cds";
  }
  doc["recommended_estimator"] = verdict;
  write_file(fs::path(out_dir) / "recommend.json", doc.dump(2) + "\n");
  manifest.finish({"recommend.json"});
  std::cout << "recommended estimator: " << verdict << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& edges, const std::string& attributes,
                  const DesignFlags& design_flags, std::vector<std::uint64_t> sizes,
                  std::uint32_t replications, std::uint64_t seed, bool unlabeled,
                  const std::string& mode, std::uint32_t max_order,
                  std::uint64_t budget, const std::string& truth_orders,
                  const std::string& truth_compositions, double threshold,
                  unsigned workers, const std::string& out_dir) {
  fs::create_directories(out_dir);
  Manifest manifest("sweep", out_dir);
  manifest.doc["config"] = {{"edges", edges},
                            {"attributes", attributes},
                            {"sizes", sizes},
                            {"replications", replications},
                            {"seed", seed},
                            {"unlabeled", unlabeled},
                            {"mode", mode},
                            {"max_order", max_order},
                            {"budget", budget},
                            {"truth", truth_orders},
                            {"threshold", threshold},
                            {"workers", workers}};
  manifest.doc["config"].update(design_flags.to_json());

  const auto loaded = load_graph_file(
      edges, attributes.empty() ? std::nullopt : std::optional<std::string>(attributes));

  SweepConfig config;
  config.design_template = design_flags.build(1, loaded.graph.node_count(), &loaded.graph);
  config.sizes = std::move(sizes);
  config.replications = replications;
  config.seed = seed;
  config.labeled = !unlabeled;
  config.mode = parse_mode(mode);
  if (max_order > 0) config.max_order = max_order;
  config.census_budget = budget;
  config.heuristic_threshold = threshold;
  config.dataset_id = fs::path(edges).stem().string();
  if (!truth_orders.empty()) {
    std::ifstream orders(truth_orders);
    if (!orders) throw IoError("cannot open truth file: " + truth_orders);
    if (!truth_compositions.empty()) {
      std::ifstream comps(truth_compositions);
      if (!comps) throw IoError("cannot open truth file: " + truth_compositions);
      config.truth = read_census_csv(orders, &comps);
    } else {
      config.truth = read_census_csv(orders, nullptr);
    }
  }

  Executor exec(workers);
  const auto report = run_sweep(loaded.graph, config, &exec);

  write_file(fs::path(out_dir) / "sweep_report.json", report_to_json(report).dump(2) + "\n");
  {
    std::ofstream csv(fs::path(out_dir) / "sweep_results.csv");
    write_report_csv(report, csv);
  }
  manifest.finish({"sweep_report.json", "sweep_results.csv"});

  for (const auto& agg : report.aggregates) {
    std::cout << "n'=" << agg.size << " median NMAE:";
    for (const auto& [name, value] : agg.median_nmae) {
      std::cout << ' ' << name << '=' << value;
    }
    std::cout << " (recommend "
              << (agg.verdict == EstimatorChoice::cc ? "cc" : "cds") << ")\n";
  }
  return 0;
}

int run_plot(const std::string& report_path, const std::string& out_dir) {
  fs::create_directories(out_dir);
  Manifest manifest("plot", out_dir);
  manifest.doc["config"] = {{"report", report_path}};

  std::ifstream in(report_path);
  if (!in) throw IoError("cannot open report: " + report_path);
  json report = json::parse(in, nullptr, false);
  if (report.is_discarded()) throw ParseError("report is not valid JSON");

  std::vector<std::string> outputs;

  // NMAE vs n chart
  std::vector<std::string> x_labels;
  std::map<std::string, svg::Series> series;
  const std::map<std::string, std::string> colors{{"cds", "#d62728"},
                                                  {"cc", "#1f77b4"},
                                                  {"cds_u", "#ff9896"},
                                                  {"cc_u", "#aec7e8"}};
  std::size_t idx = 0;
  for (const auto& agg : report["aggregates"]) {
    x_labels.push_back(std::to_string(agg["n_prime"].get<std::uint64_t>()));
    for (const auto& [name, value] : agg["median_nmae"].items()) {
      auto& s = series[name];
      if (s.name.empty()) {
        s.name = name;
        s.color = colors.count(name) ? colors.at(name) : "#2ca02c";
      }
      s.x.push_back(static_cast<double>(idx));
      s.y.push_back(value.get<double>());
    }
    ++idx;
  }
  std::vector<svg::Series> series_vec;
  for (const auto& [name, s] : series) {
    (void)name;
    series_vec.push_back(s);
  }
  {
    std::ostringstream buf;
    svg::line_chart(buf, "median NMAE vs sample size", "egonet sample size n'",
                    "median NMAE", x_labels, series_vec);
    write_file(fs::path(out_dir) / "nmae_vs_n.svg", buf.str());
    outputs.push_back("nmae_vs_n.svg");
  }

  // per-size distribution overlays
  std::map<std::uint32_t, double> truth;
  for (const auto& [order, count] : report["truth_by_order"].items()) {
    truth[static_cast<std::uint32_t>(std::stoul(order))] = count.get<double>();
  }
  for (const auto& agg : report["aggregates"]) {
    std::vector<svg::Series> overlays;
    auto add_overlay = [&](const char* key, const char* name, const char* color) {
      if (!agg.contains(key)) return;
      svg::Series s;
      s.name = name;
      s.color = color;
      for (const auto& [order, value] : agg[key].items()) {
        s.x.push_back(std::stod(order));
        s.y.push_back(value.get<double>());
      }
      overlays.push_back(std::move(s));
    };
    add_overlay("mean_estimate_cds", "mean CDS estimate", "#d62728");
    add_overlay("mean_estimate_cc", "mean CC estimate", "#1f77b4");
    const auto size = agg["n_prime"].get<std::uint64_t>();
    std::ostringstream buf;
    svg::overlay_chart(buf,
                       "clique distribution, truth vs estimates (n'=" +
                           std::to_string(size) + ")",
                       truth, overlays);
    const std::string filename = "overlay_n" + std::to_string(size) + ".svg";
    write_file(fs::path(out_dir) / filename, buf.str());
    outputs.push_back(filename);
  }
  const std::size_t figure_count = outputs.size();
  manifest.finish(std::move(outputs));
  std::cout << "wrote " << figure_count << " figures to " << out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clique size and composition distribution estimation from egonet samples"};
  app.require_subcommand(1);
  app.fallthrough();  // --out/--workers may follow the subcommand
  app.set_version_flag("--version", kVersion);

  unsigned workers = default_worker_count();
  std::string out_dir = ".";
  app.add_option("--workers", workers, "Worker threads (env CLIQUEDIST_WORKERS)")
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  // census
  auto* census_cmd = app.add_subcommand("census", "Exact whole-graph clique census");
  std::string edges, attributes, mode = "maximal";
  std::uint32_t max_order = 0;
  std::uint64_t budget = 50'000'000;
  census_cmd->add_option("--edges", edges, "SNAP-style edge list")->required();
  census_cmd->add_option("--attributes", attributes, "node_id,attribute CSV");
  census_cmd->add_option("--mode", mode, "maximal|all (all needs --max-order)")
      ->check(CLI::IsMember({"maximal", "all"}));
  census_cmd->add_option("--max-order", max_order, "Order cap");
  census_cmd->add_option("--budget", budget, "Abort past this many cliques");

  // estimate
  auto* estimate_cmd =
      app.add_subcommand("estimate", "Estimate clique distributions from a sample");
  std::string egonets, estimator = "auto";
  bool unlabeled = false;
  std::uint64_t seed = 1;
  std::uint64_t pool_cap = kDefaultPoolCap;
  double threshold = 1.5;
  DesignFlags est_design;
  estimate_cmd->add_option("--egonets", egonets, "Egonet sample (JSON lines)");
  estimate_cmd->add_option("--edges", edges, "Graph edge list (to draw a sample from)");
  estimate_cmd->add_option("--attributes", attributes, "node_id,attribute CSV");
  est_design.attach(estimate_cmd);
  estimate_cmd->add_option("--estimator", estimator, "auto|cds|cc")
      ->check(CLI::IsMember({"auto", "cds", "cc"}));
  estimate_cmd->add_flag("--unlabeled", unlabeled,
                         "Anonymize neighbor labels when drawing from a graph");
  estimate_cmd->add_option("--seed", seed, "RNG seed for drawing");
  estimate_cmd->add_option("--mode", mode, "maximal|all")
      ->check(CLI::IsMember({"maximal", "all"}));
  estimate_cmd->add_option("--max-order", max_order, "Order cap");
  estimate_cmd->add_option("--pool-cap", pool_cap, "Distinct clique pool cap");
  estimate_cmd->add_option("--threshold", threshold, "Average-edge-count threshold");
  std::string save_sample;
  estimate_cmd->add_option("--save-sample", save_sample,
                           "Also write the sample as egonet JSON lines");

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Replicated-sampling evaluation over sample sizes");
  std::vector<std::uint64_t> sizes;
  std::uint32_t replications = 1000;
  std::string truth_orders, truth_compositions;
  DesignFlags sweep_design;
  sweep_cmd->add_option("--edges", edges, "Graph edge list")->required();
  sweep_cmd->add_option("--attributes", attributes, "node_id,attribute CSV");
  sweep_cmd->add_option("--sizes", sizes, "Sample sizes n' (comma separated)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--replications", replications, "Replications per size")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", seed, "Base RNG seed");
  sweep_design.attach(sweep_cmd, /*with_draws=*/false);
  sweep_cmd->add_flag("--unlabeled", unlabeled, "Evaluate without neighbor labels");
  sweep_cmd->add_option("--mode", mode, "maximal|all")
      ->check(CLI::IsMember({"maximal", "all"}));
  sweep_cmd->add_option("--max-order", max_order, "Order cap");
  sweep_cmd->add_option("--budget", budget, "Census budget (ground truth)");
  sweep_cmd->add_option("--truth", truth_orders, "Precomputed order,count CSV");
  sweep_cmd->add_option("--truth-compositions", truth_compositions,
                        "Precomputed composition,count CSV");
  sweep_cmd->add_option("--threshold", threshold, "Average-edge-count threshold");

  // recommend
  auto* recommend_cmd = app.add_subcommand(
      "recommend", "Pick CDS or CC from saturation, before any enumeration");
  DesignFlags rec_design;
  recommend_cmd->add_option("--egonets", egonets, "Egonet sample (JSON lines)");
  recommend_cmd->add_option("--edges", edges, "Graph edge list");
  rec_design.attach(recommend_cmd);
  recommend_cmd->add_option("--seed", seed, "RNG seed for drawing");
  recommend_cmd->add_option("--threshold", threshold, "Average-edge-count threshold");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "Render sweep report figures as SVG");
  std::string report_path;
  plot_cmd->add_option("--report", report_path, "sweep_report.json path")->required();

  try {
    app.parse(argc, argv);
    if (*census_cmd) {
      return run_census(edges, attributes, mode, max_order, budget, workers, out_dir);
    }
    if (*estimate_cmd) {
      return run_estimate(egonets, edges, attributes, est_design, estimator, unlabeled,
                          seed, mode, max_order, pool_cap, threshold, save_sample,
                          workers, out_dir);
    }
    if (*sweep_cmd) {
      return run_sweep_cmd(edges, attributes, sweep_design, sizes, replications, seed,
                           unlabeled, mode, max_order, budget, truth_orders,
                           truth_compositions, threshold, workers, out_dir);
    }
    if (*recommend_cmd) {
      return run_recommend(egonets, edges, rec_design, seed, threshold, out_dir);
    }
    if (*plot_cmd) {
      return run_plot(report_path, out_dir);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedDesignError& e) {
    std::cerr << "unsupported design: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n' << e.progress << '\n';
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 5;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
