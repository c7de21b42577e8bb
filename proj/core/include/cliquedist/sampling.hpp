#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cliquedist/cliques.hpp"
#include "cliquedist/graph.hpp"

namespace cliquedist {

enum class DesignKind { uis, wis };
enum class Replacement { with_replacement, without_replacement };
enum class WeightMode { exact_probabilities, proportional_only };

// Ego sampling design: UIS/WIS x with/without replacement, n' draws from a
// population of size N. Immutable value object; Hansen-Hurwitz augmentation
// produces a new design rather than mutating one.
struct SamplingDesign {
  DesignKind kind = DesignKind::uis;
  Replacement replacement = Replacement::without_replacement;
  std::uint64_t draws = 0;       // n'
  std::uint64_t population = 0;  // N
  WeightMode weight_mode = WeightMode::exact_probabilities;
  // Per-node per-draw weights, keyed by the ids the egonets carry.
  // Required for WIS; ignored for UIS.
  std::unordered_map<OriginalId, double> weights;
  // Hansen-Hurwitz scale: per-draw prob p'_j = weights[j] * hh_scale.
  std::optional<double> hh_scale;
  // Filled by the factories so exact-probability lookups stay O(1).
  std::optional<double> weight_total;

  static SamplingDesign uis(Replacement r, std::uint64_t draws, std::uint64_t population) {
    SamplingDesign d;
    d.kind = DesignKind::uis;
    d.replacement = r;
    d.draws = draws;
    d.population = population;
    return d;
  }
  static SamplingDesign wis(Replacement r, std::uint64_t draws, std::uint64_t population,
                            std::unordered_map<OriginalId, double> weights,
                            WeightMode mode = WeightMode::exact_probabilities) {
    SamplingDesign d;
    d.kind = DesignKind::wis;
    d.replacement = r;
    d.draws = draws;
    d.population = population;
    d.weights = std::move(weights);
    d.weight_mode = mode;
    double total = 0.0;
    for (const auto& [id, w] : d.weights) {
      (void)id;
      total += w;
    }
    d.weight_total = total;
    return d;
  }
  // Degree-proportional WIS against a loaded graph.
  static SamplingDesign wis_degree(Replacement r, std::uint64_t draws, const Graph& g,
                                   WeightMode mode = WeightMode::exact_probabilities);
};

// One-line summary recorded on every Estimate for provenance.
std::string design_digest(const SamplingDesign& d);

struct EgonetSample {
  std::uint64_t draws = 0;  // n', total draws including repeats
  std::vector<Egonet> egonets;  // unique egos, ordered by ego id
  std::vector<std::uint32_t> multiplicities;  // draw count per unique ego
  bool labeled = true;
  SamplingDesign design;
  std::uint64_t seed = 0;
  std::vector<std::string> category_names;  // attribute labels, 1..p

  std::size_t size() const { return egonets.size(); }  // n
  bool attributed() const {
    return !egonets.empty() && egonets.front().attributed();
  }
};

// Draw n' egos per the design and extract their egonets. Deterministic for
// a given seed; egonets come back sorted by ego id with repeats collapsed.
EgonetSample draw_sample(const Graph& g, const SamplingDesign& d, std::uint64_t seed,
                         bool labeled = true);

// p_j: probability that node j appears in the sample at all.
double node_inclusion_prob(const SamplingDesign& d, OriginalId j);

// p_jk: probability that both j and k appear. UIS only.
double joint_inclusion_prob(const SamplingDesign& d, OriginalId j, OriginalId k);

// pi_k: probability that at least one member of the clique is sampled.
double clique_inclusion_prob(const SamplingDesign& d, const CliqueRecord& clique);

// Hansen-Hurwitz normalization of proportional-only weights into per-draw
// probabilities, using the observed draws including repetitions.
struct HansenHurwitzResult {
  SamplingDesign design;  // augmented copy (hh_scale set)
  std::unordered_map<OriginalId, double> draw_probs;  // p'_j for observed nodes
};
HansenHurwitzResult approximate_draw_probs(
    const SamplingDesign& d,
    const std::vector<std::pair<OriginalId, std::uint32_t>>& observed_draws);

// Per-draw selection probability p'_j under the design.
double draw_prob(const SamplingDesign& d, OriginalId j);

}  // namespace cliquedist
