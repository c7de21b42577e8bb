#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliquedist/cliques.hpp"
#include "cliquedist/sampling.hpp"
#include "cliquedist/types.hpp"

namespace cliquedist {

enum class EstimatorKind { cds_ht, cds_ght, cc };
enum class VarianceMethod { ht_joint, bh, none };

// What is being estimated: a clique order i, or a composition vector u
// (whose order is the sum of its entries).
struct TargetKey {
  std::uint32_t order = 0;
  std::optional<Composition> composition;

  static TargetKey for_order(std::uint32_t i) { return {i, std::nullopt}; }
  static TargetKey for_composition(Composition u) {
    TargetKey t;
    t.order = composition_order(u);
    t.composition = std::move(u);
    return t;
  }
  bool operator<(const TargetKey& other) const {
    if (order != other.order) return order < other.order;
    if (composition.has_value() != other.composition.has_value()) {
      return !composition.has_value();
    }
    if (!composition) return false;
    return *composition < *other.composition;
  }
};

struct Estimate {
  TargetKey target;
  double value = 0.0;
  std::optional<double> variance;
  bool variance_floored = false;  // a negative variance estimate was clamped to 0
  EstimatorKind estimator = EstimatorKind::cds_ht;
  VarianceMethod variance_method = VarianceMethod::none;
  std::string design_digest;
};

// Distinct ego-containing cliques pooled across the labeled egonets of one
// sample, each with its inclusion probability. Deduplication is by the
// sorted member list.
struct DistinctCliquePool {
  struct Entry {
    CliqueRecord clique;
    double inclusion_prob = 0.0;  // pi_k
  };
  std::map<std::vector<OriginalId>, Entry> cliques;
  std::uint64_t ego_sample_size = 0;  // n
  std::string design_digest;

  std::size_t size() const { return cliques.size(); }
};

inline constexpr std::uint64_t kDefaultPoolCap = 20'000'000;

using Profiles = std::vector<EgoCliqueProfile>;

// Profile every egonet of the sample (parallel over egonets).
Profiles profile_sample(const EgonetSample& sample, const ProfileOptions& opts = {},
                        const Executor* executor = nullptr);

// Clique degree sum estimator: C^_* = (1/i) * sum_j d_*(H_j)/p_j.
// Variance by the joint-probability form when the design provides p_jk
// (UIS), otherwise by Brewer-Hanif. Requires exact inclusion probabilities.
Estimate estimate_cds(const EgonetSample& sample, const Profiles& profiles,
                      const TargetKey& target);

// Generalized form for weights known only up to a constant:
// C^_* = (N/i) * (sum_j d_*(H_j)/w_j) / (sum_j 1/w_j). Variance by Brewer-Hanif.
Estimate estimate_cds_generalized(const EgonetSample& sample, const Profiles& profiles,
                                  const TargetKey& target);

// Dispatches on the design's weight mode.
Estimate estimate_cds_auto(const EgonetSample& sample, const Profiles& profiles,
                           const TargetKey& target);

// Union of all ego-containing cliques across the labeled egonets, with pi_k
// attached. Aborts past `cap` pooled cliques.
DistinctCliquePool build_clique_pool(const EgonetSample& sample, const Profiles& profiles,
                                     std::uint64_t cap = kDefaultPoolCap);

// Distinct clique counting estimator: C^_* = sum_k 1/pi_k over the pooled
// cliques that match the target.
Estimate estimate_cc(const DistinctCliquePool& pool, const TargetKey& target);

// Horvitz-Thompson variance estimator with joint inclusion probabilities.
// Returns the raw value, which can be negative; Estimate attachment floors
// it at zero and flags the flooring.
double estimate_var_ht(const EgonetSample& sample, const Profiles& profiles,
                       const TargetKey& target);

// Brewer-Hanif variance estimator (upward biased, no joint probabilities
// needed). Uses w_j = p_j when the design has exact probabilities.
double estimate_var_bh(const EgonetSample& sample, const Profiles& profiles,
                       const TargetKey& target, double point_estimate);

// Brewer-Hanif adaptation for the CC estimator. Absent (not zero) when
// fewer than two matching cliques were pooled or the estimate is zero.
std::optional<double> estimate_var_bh_cc(const DistinctCliquePool& pool,
                                         const TargetKey& target, double point_estimate);

// All orders (and compositions, when tallied) realized in the profiles.
std::vector<TargetKey> realized_targets(const Profiles& profiles);

std::vector<Estimate> estimate_cds_all(const EgonetSample& sample,
                                       const Profiles& profiles);
std::vector<Estimate> estimate_cc_all(const EgonetSample& sample, const Profiles& profiles,
                                      std::uint64_t cap = kDefaultPoolCap);

}  // namespace cliquedist
