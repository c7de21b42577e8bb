#include "cliquedist/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cliquedist/error.hpp"
#include "cliquedist/rng.hpp"

namespace cliquedist {

namespace {

// Integer-exponent power by repeated squaring; keeps the arithmetic close
// to what an exhaustive enumeration of draw sequences produces.
double int_pow(double base, std::uint64_t e) {
  double result = 1.0;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

void validate(const SamplingDesign& d) {
  if (d.population == 0) throw UsageError("design population N must be positive");
  if (d.draws == 0) throw UsageError("design draw count n' must be positive");
  if (d.kind == DesignKind::uis && d.replacement == Replacement::without_replacement &&
      d.draws > d.population) {
    throw UsageError("UIS without replacement requires n' <= N");
  }
  if (d.kind == DesignKind::wis && d.weights.empty()) {
    throw UsageError("WIS design requires weights");
  }
}

double total_weight(const SamplingDesign& d) {
  if (d.weight_total) return *d.weight_total;
  double total = 0.0;
  for (const auto& [id, w] : d.weights) {
    (void)id;
    total += w;
  }
  return total;
}

// Fenwick tree over weights for without-replacement weighted draws.
class PrefixTree {
 public:
  explicit PrefixTree(const std::vector<double>& w) : tree_(w.size() + 1, 0.0) {
    for (std::size_t i = 0; i < w.size(); ++i) add(i, w[i]);
  }
  void add(std::size_t i, double delta) {
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }
  double total() const {
    double s = 0.0;
    std::size_t k = tree_.size() - 1;
    for (; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }
  // smallest index with prefix sum > target
  std::size_t find(double target) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while (mask * 2 < tree_.size()) mask *= 2;
    for (; mask > 0; mask /= 2) {
      const std::size_t next = pos + mask;
      if (next < tree_.size() && tree_[next] <= target) {
        target -= tree_[next];
        pos = next;
      }
    }
    return pos;  // 0-based element index
  }

 private:
  std::vector<double> tree_;
};

}  // namespace

SamplingDesign SamplingDesign::wis_degree(Replacement r, std::uint64_t draws,
                                          const Graph& g, WeightMode mode) {
  std::unordered_map<OriginalId, double> w;
  w.reserve(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    w.emplace(g.original_id(v), static_cast<double>(g.degree(v)));
  }
  return wis(r, draws, g.node_count(), std::move(w), mode);
}

std::string design_digest(const SamplingDesign& d) {
  std::ostringstream os;
  os << (d.kind == DesignKind::uis ? "uis" : "wis") << '/'
     << (d.replacement == Replacement::with_replacement ? "with" : "without")
     << " n'=" << d.draws << " N=" << d.population;
  if (d.kind == DesignKind::wis) {
    os << (d.weight_mode == WeightMode::exact_probabilities ? " weights=exact"
                                                            : " weights=proportional");
    if (d.hh_scale) os << " (hansen-hurwitz)";
  }
  return os.str();
}

double draw_prob(const SamplingDesign& d, OriginalId j) {
  if (d.kind == DesignKind::uis) return 1.0 / static_cast<double>(d.population);
  const auto it = d.weights.find(j);
  if (it == d.weights.end()) {
    throw UsageError("no weight for node " + std::to_string(j));
  }
  if (d.weight_mode == WeightMode::exact_probabilities) {
    return it->second / total_weight(d);
  }
  if (!d.hh_scale) {
    throw UsageError("proportional-only weights: call approximate_draw_probs first");
  }
  return it->second * *d.hh_scale;
}

double node_inclusion_prob(const SamplingDesign& d, OriginalId j) {
  validate(d);
  const double n_prime = static_cast<double>(d.draws);
  const double population = static_cast<double>(d.population);
  if (d.kind == DesignKind::uis) {
    if (d.replacement == Replacement::without_replacement) {
      return n_prime / population;  // p_j = n'/N
    }
    return 1.0 - int_pow(1.0 - 1.0 / population, d.draws);  // 1-(1-1/N)^n'
  }
  if (d.replacement == Replacement::without_replacement) {
    throw UnsupportedDesignError(
        "WIS without replacement: inclusion probabilities not supported");
  }
  const double pj = draw_prob(d, j);
  return 1.0 - int_pow(1.0 - pj, d.draws);  // 1-(1-p'_j)^n'
}

double joint_inclusion_prob(const SamplingDesign& d, OriginalId j, OriginalId k) {
  validate(d);
  if (j == k) throw UsageError("joint inclusion probability needs distinct nodes");
  if (d.kind != DesignKind::uis) {
    throw UnsupportedDesignError(
        "joint inclusion probabilities are only available for UIS designs");
  }
  const double population = static_cast<double>(d.population);
  if (d.replacement == Replacement::without_replacement) {
    const double n = static_cast<double>(d.draws);
    return n * (n - 1.0) / (population * (population - 1.0));
  }
  return 1.0 - 2.0 * int_pow((population - 1.0) / population, d.draws) +
         int_pow((population - 2.0) / population, d.draws);
}

double clique_inclusion_prob(const SamplingDesign& d, const CliqueRecord& clique) {
  validate(d);
  const double population = static_cast<double>(d.population);
  const double order = static_cast<double>(clique.order);
  if (clique.order > d.population) {
    throw UsageError("clique order exceeds population size");
  }
  if (d.kind == DesignKind::uis) {
    if (d.replacement == Replacement::with_replacement) {
      if (order >= population) return 1.0;
      return 1.0 - int_pow(1.0 - order / population, d.draws);
    }
    // One minus the chance of drawing all n' egos from the non-members:
    // prod_{t=0}^{n'-1} (N-i-t)/(N-t).
    double miss = 1.0;
    for (std::uint64_t t = 0; t < d.draws; ++t) {
      const double numer = population - order - static_cast<double>(t);
      if (numer <= 0.0) return 1.0;
      miss *= numer / (population - static_cast<double>(t));
    }
    return 1.0 - miss;
  }
  if (d.replacement == Replacement::without_replacement) {
    throw UnsupportedDesignError(
        "WIS without replacement: clique inclusion probabilities not supported");
  }
  if (clique.oversized) {
    throw UsageError("oversized (truncated) clique has no usable member list");
  }
  double hit = 0.0;  // per-draw probability of hitting any member
  for (const auto m : clique.members) hit += draw_prob(d, m);
  if (hit >= 1.0) return 1.0;
  return 1.0 - int_pow(1.0 - hit, d.draws);
}

HansenHurwitzResult approximate_draw_probs(
    const SamplingDesign& d,
    const std::vector<std::pair<OriginalId, std::uint32_t>>& observed_draws) {
  validate(d);
  if (d.kind != DesignKind::wis || d.weight_mode != WeightMode::proportional_only) {
    throw UsageError(
        "Hansen-Hurwitz approximation applies to proportional-only WIS designs");
  }
  if (observed_draws.empty()) throw UsageError("no observed draws");

  // sum over all n' observations (repetitions included) of 1/w'_k
  double inv_sum = 0.0;
  std::uint64_t total_obs = 0;
  for (const auto& [id, mult] : observed_draws) {
    const auto it = d.weights.find(id);
    if (it == d.weights.end() || it->second == 0.0) {
      throw Error("Hansen-Hurwitz: zero or missing weight for observed node " +
                  std::to_string(id));
    }
    inv_sum += static_cast<double>(mult) / it->second;
    total_obs += mult;
  }
  (void)total_obs;  // header n' is authoritative even if records were collapsed

  HansenHurwitzResult result;
  result.design = d;
  result.design.hh_scale =
      inv_sum / (static_cast<double>(d.draws) * static_cast<double>(d.population));
  for (const auto& [id, mult] : observed_draws) {
    (void)mult;
    result.draw_probs[id] = d.weights.at(id) * *result.design.hh_scale;
  }
  return result;
}

EgonetSample draw_sample(const Graph& g, const SamplingDesign& d, std::uint64_t seed,
                         bool labeled) {
  validate(d);
  if (d.population != g.node_count()) {
    throw UsageError("design population N=" + std::to_string(d.population) +
                     " does not match graph node count " +
                     std::to_string(g.node_count()));
  }
  Rng rng(seed);
  const std::uint32_t n = g.node_count();

  // dense-id draw counts
  std::unordered_map<NodeId, std::uint32_t> counts;
  if (d.kind == DesignKind::uis) {
    if (d.replacement == Replacement::without_replacement) {
      // partial Fisher-Yates
      std::vector<NodeId> ids(n);
      std::iota(ids.begin(), ids.end(), 0);
      for (std::uint64_t t = 0; t < d.draws; ++t) {
        const std::uint64_t j = t + rng.below(n - t);
        std::swap(ids[t], ids[j]);
        counts[ids[t]] = 1;
      }
    } else {
      for (std::uint64_t t = 0; t < d.draws; ++t) {
        ++counts[static_cast<NodeId>(rng.below(n))];
      }
    }
  } else {
    // weights in dense order; every node needs one
    std::vector<double> w(n);
    std::uint64_t positive = 0;
    for (NodeId v = 0; v < n; ++v) {
      const auto it = d.weights.find(g.original_id(v));
      if (it == d.weights.end()) {
        throw UsageError("no weight for node " + std::to_string(g.original_id(v)));
      }
      if (it->second < 0.0) throw UsageError("negative sampling weight");
      w[v] = it->second;
      if (w[v] > 0.0) ++positive;
    }
    if (d.replacement == Replacement::without_replacement) {
      if (d.draws > positive) {
        throw UsageError("WIS without replacement: n' exceeds the " +
                         std::to_string(positive) + " positive-weight nodes");
      }
      PrefixTree tree(w);
      for (std::uint64_t t = 0; t < d.draws; ++t) {
        std::size_t v;
        do {  // zero-weight hits only on exact fp boundaries; redraw
          v = tree.find(rng.unit() * tree.total());
        } while (w[v] <= 0.0);
        counts[static_cast<NodeId>(v)] = 1;
        tree.add(v, -w[v]);
        w[v] = 0.0;
      }
    } else {
      // inverse CDF over a cumulative weight array of the positive entries
      std::vector<double> cumulative;
      std::vector<NodeId> positive_ids;
      cumulative.reserve(positive);
      positive_ids.reserve(positive);
      double acc = 0.0;
      for (NodeId v = 0; v < n; ++v) {
        if (w[v] > 0.0) {
          acc += w[v];
          cumulative.push_back(acc);
          positive_ids.push_back(v);
        }
      }
      if (acc <= 0.0) throw UsageError("all sampling weights are zero");
      for (std::uint64_t t = 0; t < d.draws; ++t) {
        const double target = rng.unit() * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        if (it == cumulative.end()) --it;
        ++counts[positive_ids[static_cast<std::size_t>(it - cumulative.begin())]];
      }
    }
  }

  std::vector<NodeId> unique_egos;
  unique_egos.reserve(counts.size());
  for (const auto& [v, c] : counts) {
    (void)c;
    unique_egos.push_back(v);
  }
  std::sort(unique_egos.begin(), unique_egos.end());

  EgonetSample sample;
  sample.draws = d.draws;
  sample.labeled = labeled;
  sample.design = d;
  sample.seed = seed;
  sample.category_names = g.category_names();
  sample.egonets.reserve(unique_egos.size());
  sample.multiplicities.reserve(unique_egos.size());
  for (const NodeId v : unique_egos) {
    sample.egonets.push_back(extract_egonet(g, v, labeled));
    sample.multiplicities.push_back(counts[v]);
  }
  return sample;
}

}  // namespace cliquedist
