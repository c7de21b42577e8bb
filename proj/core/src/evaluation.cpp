#include "cliquedist/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "cliquedist/error.hpp"
#include "cliquedist/rng.hpp"

namespace cliquedist {

namespace {

template <typename Key>
double nmae_impl(const std::map<Key, double>& estimated,
                 const std::map<Key, double>& truth) {
  double denom = 0.0;
  for (const auto& [k, v] : truth) {
    (void)k;
    denom += std::abs(v);
  }
  if (denom == 0.0) throw UsageError("NMAE undefined: truth distribution is all zero");

  double num = 0.0;
  for (const auto& [k, v] : truth) {
    const auto it = estimated.find(k);
    num += std::abs((it == estimated.end() ? 0.0 : it->second) - v);
  }
  for (const auto& [k, v] : estimated) {
    if (!truth.count(k)) num += std::abs(v);  // spurious support is penalized
  }
  return num / denom;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// linear-interpolation quantile on sorted data
double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

SaturationMetrics metrics_from_tallies(std::uint64_t unique_nodes,
                                       std::uint64_t unique_edges,
                                       std::uint64_t total_nodes,
                                       std::uint64_t total_edges,
                                       const Graph* g) {
  SaturationMetrics m;
  m.unique_nodes = unique_nodes;
  m.unique_edges = unique_edges;
  m.total_node_observations = total_nodes;
  m.total_edge_observations = total_edges;
  m.avg_node_count = unique_nodes == 0
                         ? 1.0
                         : static_cast<double>(total_nodes) / static_cast<double>(unique_nodes);
  m.avg_edge_count = unique_edges == 0
                         ? 1.0
                         : static_cast<double>(total_edges) / static_cast<double>(unique_edges);
  if (g) {
    m.pct_nodes_sampled =
        100.0 * static_cast<double>(unique_nodes) / static_cast<double>(g->node_count());
    if (g->edge_count() > 0) {
      m.pct_edges_sampled =
          100.0 * static_cast<double>(unique_edges) / static_cast<double>(g->edge_count());
    }
  }
  return m;
}

std::map<std::uint32_t, double> order_estimates(const std::vector<Estimate>& ests) {
  std::map<std::uint32_t, double> out;
  for (const auto& e : ests) {
    if (!e.target.composition) out[e.target.order] = e.value;
  }
  return out;
}

std::map<Composition, double> composition_estimates(const std::vector<Estimate>& ests) {
  std::map<Composition, double> out;
  for (const auto& e : ests) {
    if (e.target.composition) out[*e.target.composition] = e.value;
  }
  return out;
}

template <typename K>
std::map<K, double> to_double_map(const std::map<K, std::uint64_t>& m) {
  std::map<K, double> out;
  for (const auto& [k, v] : m) out[k] = static_cast<double>(v);
  return out;
}

}  // namespace

double nmae(const std::map<std::uint32_t, double>& estimated,
            const std::map<std::uint32_t, double>& truth) {
  return nmae_impl(estimated, truth);
}

double nmae_composition(const std::map<Composition, double>& estimated,
                        const std::map<Composition, double>& truth) {
  return nmae_impl(estimated, truth);
}

SaturationMetrics saturation_metrics(const EgonetSample& sample, const Graph& g) {
  // Re-derive member and edge sets from the graph so unlabeled samples get
  // the same treatment (egos are always identified; only neighbor labels
  // are withheld from estimation).
  std::unordered_set<std::uint64_t> nodes;
  std::unordered_set<std::uint64_t> edges;
  std::uint64_t total_nodes = 0, total_edges = 0;
  for (const auto& e : sample.egonets) {
    const auto dense = g.dense_id(e.ego_id);
    if (!dense) {
      throw UsageError("sample ego " + std::to_string(e.ego_id) + " is not in the graph");
    }
    const NodeId ego = *dense;
    const auto nbrs = g.neighbors(ego);
    total_nodes += 1 + nbrs.size();
    nodes.insert(ego);
    for (const NodeId w : nbrs) nodes.insert(w);
    // edges within the egonet
    std::uint64_t edge_count = nbrs.size();
    for (const NodeId w : nbrs) {
      const std::uint64_t key = (static_cast<std::uint64_t>(std::min(ego, w)) << 32) |
                                std::max(ego, w);
      edges.insert(key);
    }
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      const auto adj = g.neighbors(nbrs[a]);
      std::size_t x = 0, y = a + 1;
      while (x < adj.size() && y < nbrs.size()) {
        if (adj[x] < nbrs[y]) {
          ++x;
        } else if (adj[x] > nbrs[y]) {
          ++y;
        } else {
          const NodeId u = nbrs[a], v = nbrs[y];
          edges.insert((static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v));
          ++edge_count;
          ++x;
          ++y;
        }
      }
    }
    total_edges += edge_count;
  }
  return metrics_from_tallies(nodes.size(), edges.size(), total_nodes, total_edges, &g);
}

SaturationMetrics saturation_metrics(const EgonetSample& sample) {
  if (!sample.labeled) {
    throw UsageError(
        "saturation metrics on a bare sample need labels; supply the graph instead");
  }
  std::unordered_set<OriginalId> nodes;
  std::set<std::pair<OriginalId, OriginalId>> edges;
  std::uint64_t total_nodes = 0, total_edges = 0;
  for (const auto& e : sample.egonets) {
    total_nodes += e.member_count();
    total_edges += e.edges.size();
    nodes.insert(e.ego_id);
    for (const auto id : e.neighbor_ids) nodes.insert(id);
    for (const auto& [a, b] : e.edges) {
      const OriginalId ga = a == 0 ? e.ego_id : e.neighbor_ids[a - 1];
      const OriginalId gb = b == 0 ? e.ego_id : e.neighbor_ids[b - 1];
      edges.emplace(std::min(ga, gb), std::max(ga, gb));
    }
  }
  return metrics_from_tallies(nodes.size(), edges.size(), total_nodes, total_edges,
                              nullptr);
}

EstimatorChoice recommend_estimator(const SaturationMetrics& metrics, bool labeled,
                                    double threshold) {
  if (!labeled) return EstimatorChoice::cds;
  return metrics.avg_edge_count > threshold ? EstimatorChoice::cc : EstimatorChoice::cds;
}

ReplicationReport run_sweep(const Graph& g, const SweepConfig& config,
                            const Executor* executor) {
  const Executor& exec = executor ? *executor : Executor::serial();
  if (config.sizes.empty()) throw UsageError("sweep needs at least one sample size");
  if (config.replications == 0) throw UsageError("sweep needs at least one replication");

  ReplicationReport report;
  report.dataset_id = config.dataset_id;
  report.seed = config.seed;
  report.sizes = config.sizes;

  if (config.truth) {
    report.truth = *config.truth;
  } else {
    CensusOptions census_opts;
    census_opts.mode = config.mode;
    census_opts.max_order = config.max_order;
    census_opts.budget = config.census_budget;
    census_opts.executor = &exec;
    report.truth = census(g, census_opts);
  }
  const auto truth_by_order = to_double_map(report.truth.by_order);
  const auto truth_by_comp = to_double_map(report.truth.by_composition);
  const bool attributed = g.attributed() && !truth_by_comp.empty();

  {
    SamplingDesign probe = config.design_template;
    probe.draws = config.sizes.front();
    probe.population = g.node_count();
    report.design_digest = design_digest(probe);
  }

  ProfileOptions profile_opts;
  profile_opts.mode = config.mode;
  profile_opts.max_order = config.max_order;

  const std::size_t n_sizes = config.sizes.size();
  const std::size_t total_runs = n_sizes * config.replications;
  report.results.resize(total_runs);
  std::vector<std::map<std::uint32_t, double>> run_est_cds(total_runs);
  std::vector<std::map<std::uint32_t, double>> run_est_cc(total_runs);

  exec.parallel_for(total_runs, [&](std::size_t run) {
    const std::size_t size_idx = run / config.replications;
    const std::uint32_t rep = static_cast<std::uint32_t>(run % config.replications);
    const std::uint64_t size = config.sizes[size_idx];

    SamplingDesign design = config.design_template;
    design.draws = size;
    design.population = g.node_count();

    const std::uint64_t rep_seed = derive_seed(config.seed, run);
    const EgonetSample sample = draw_sample(g, design, rep_seed, config.labeled);
    const Profiles profiles = profile_sample(sample, profile_opts);

    ReplicationResult r;
    r.size = size;
    r.replication = rep;
    r.unique_egos = sample.size();

    const auto cds = estimate_cds_all(sample, profiles);
    run_est_cds[run] = order_estimates(cds);
    r.nmae_cds = nmae(run_est_cds[run], truth_by_order);
    if (attributed) {
      r.nmae_cds_composition =
          nmae_composition(composition_estimates(cds), truth_by_comp);
    }
    if (config.labeled) {
      const auto cc = estimate_cc_all(sample, profiles);
      run_est_cc[run] = order_estimates(cc);
      r.nmae_cc = nmae(run_est_cc[run], truth_by_order);
      if (attributed) {
        r.nmae_cc_composition =
            nmae_composition(composition_estimates(cc), truth_by_comp);
      }
    }
    r.saturation = saturation_metrics(sample, g);
    report.results[run] = std::move(r);
  });

  // deterministic aggregation, ordered by replication index
  for (std::size_t s = 0; s < n_sizes; ++s) {
    SizeAggregate agg;
    agg.size = config.sizes[s];
    std::map<std::string, std::vector<double>> series;
    std::vector<double> edge_counts, node_counts, pct_nodes, pct_edges;
    std::map<std::uint32_t, double> sum_est_cds, sum_est_cc;

    for (std::uint32_t rep = 0; rep < config.replications; ++rep) {
      const std::size_t run = s * config.replications + rep;
      const auto& r = report.results[run];
      series["cds"].push_back(r.nmae_cds);
      if (r.nmae_cc) series["cc"].push_back(*r.nmae_cc);
      if (r.nmae_cds_composition) series["cds_u"].push_back(*r.nmae_cds_composition);
      if (r.nmae_cc_composition) series["cc_u"].push_back(*r.nmae_cc_composition);
      edge_counts.push_back(r.saturation.avg_edge_count);
      node_counts.push_back(r.saturation.avg_node_count);
      if (r.saturation.pct_nodes_sampled) pct_nodes.push_back(*r.saturation.pct_nodes_sampled);
      if (r.saturation.pct_edges_sampled) pct_edges.push_back(*r.saturation.pct_edges_sampled);
      for (const auto& [o, v] : run_est_cds[run]) agg.mean_estimate_cds[o] += v;
      for (const auto& [o, v] : run_est_cc[run]) agg.mean_estimate_cc[o] += v;
    }
    const double reps = static_cast<double>(config.replications);
    for (auto& [o, v] : agg.mean_estimate_cds) {
      (void)o;
      v /= reps;
    }
    for (auto& [o, v] : agg.mean_estimate_cc) {
      (void)o;
      v /= reps;
    }
    for (auto& [name, values] : series) {
      agg.mean_nmae[name] = mean_of(values);
      std::vector<double> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      agg.median_nmae[name] = median_of(sorted);
      agg.iqr_nmae[name] = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    }
    agg.mean_avg_edge_count = mean_of(edge_counts);
    agg.mean_avg_node_count = mean_of(node_counts);
    agg.mean_pct_nodes = mean_of(pct_nodes);
    agg.mean_pct_edges = mean_of(pct_edges);

    SaturationMetrics mean_metrics;
    mean_metrics.avg_edge_count = agg.mean_avg_edge_count;
    agg.verdict =
        recommend_estimator(mean_metrics, config.labeled, config.heuristic_threshold);
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

}  // namespace cliquedist
