#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliquedist/estimators.hpp"
#include "cliquedist/executor.hpp"
#include "cliquedist/graph.hpp"
#include "cliquedist/sampling.hpp"
#include "cliquedist/types.hpp"

namespace cliquedist {

// Normalized mean absolute error, sum|x^_i - x_i| / sum|x_i|, over the
// union of the two supports with zeros filled in.
double nmae(const std::map<std::uint32_t, double>& estimated,
            const std::map<std::uint32_t, double>& truth);
double nmae_composition(const std::map<Composition, double>& estimated,
                        const std::map<Composition, double>& truth);

struct SaturationMetrics {
  // Percentages need the full graph; absent when computed from a bare sample.
  std::optional<double> pct_nodes_sampled;
  std::optional<double> pct_edges_sampled;
  double avg_edge_count = 1.0;  // total edge observations / unique edges
  double avg_node_count = 1.0;  // total member observations / unique members
  std::uint64_t unique_nodes = 0;
  std::uint64_t unique_edges = 0;
  std::uint64_t total_node_observations = 0;
  std::uint64_t total_edge_observations = 0;
};

// Coverage of the graph by the sample's egonets (egos plus neighbors).
SaturationMetrics saturation_metrics(const EgonetSample& sample, const Graph& g);
// From the sample alone; needs labels for the unions to mean anything.
SaturationMetrics saturation_metrics(const EgonetSample& sample);

enum class EstimatorChoice { cds, cc };

// The average-edge-count heuristic: distinct clique counting pays off once
// egonets overlap enough, and it needs labels at all.
EstimatorChoice recommend_estimator(const SaturationMetrics& metrics, bool labeled,
                                    double threshold = 1.5);

struct SweepConfig {
  SamplingDesign design_template;    // draws replaced per swept size
  std::vector<std::uint64_t> sizes;  // n' values
  std::uint32_t replications = 1000;
  std::uint64_t seed = 0;
  bool labeled = true;
  EnumMode mode = EnumMode::maximal;
  std::optional<std::uint32_t> max_order;
  std::uint64_t census_budget = 50'000'000;
  std::optional<CensusResult> truth;  // precomputed ground truth, else census runs
  double heuristic_threshold = 1.5;
  std::string dataset_id;
};

struct ReplicationResult {
  std::uint64_t size = 0;  // n'
  std::uint32_t replication = 0;
  std::uint64_t unique_egos = 0;  // n
  double nmae_cds = 0.0;
  std::optional<double> nmae_cc;
  std::optional<double> nmae_cds_composition;
  std::optional<double> nmae_cc_composition;
  SaturationMetrics saturation;
};

struct SizeAggregate {
  std::uint64_t size = 0;
  // keyed "cds", "cc", "cds_u", "cc_u"
  std::map<std::string, double> median_nmae;
  std::map<std::string, double> mean_nmae;
  std::map<std::string, double> iqr_nmae;
  double mean_avg_edge_count = 0.0;
  double mean_avg_node_count = 0.0;
  double mean_pct_nodes = 0.0;
  double mean_pct_edges = 0.0;
  EstimatorChoice verdict = EstimatorChoice::cds;
  // mean estimated distribution, for overlay plots
  std::map<std::uint32_t, double> mean_estimate_cds;
  std::map<std::uint32_t, double> mean_estimate_cc;
};

struct ReplicationReport {
  std::string dataset_id;
  std::string design_digest;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> sizes;
  CensusResult truth;
  std::vector<ReplicationResult> results;  // ordered by (size, replication)
  std::vector<SizeAggregate> aggregates;   // one per size
};

// Replicated-sampling evaluation: for every size and replication, draw a
// sample, profile it, run the estimators over every realized target, score
// NMAE against the census, and record saturation. Replications run in
// parallel with per-replication derived seeds; the report is identical for
// any worker count.
ReplicationReport run_sweep(const Graph& g, const SweepConfig& config,
                            const Executor* executor = nullptr);

}  // namespace cliquedist
