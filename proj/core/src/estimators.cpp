#include "cliquedist/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cliquedist/error.hpp"

namespace cliquedist {

namespace {

std::uint64_t profile_degree(const EgoCliqueProfile& profile, const TargetKey& target) {
  if (target.composition) return profile.degree(*target.composition);
  return profile.degree(target.order);
}

void check_profiles(const EgonetSample& sample, const Profiles& profiles,
                    const TargetKey& target) {
  if (profiles.size() != sample.size()) {
    throw UsageError("profile count does not match sample size");
  }
  if (target.composition) {
    for (const auto& p : profiles) {
      if (!p.has_compositions) {
        throw UsageError("composition target but profiles carry no compositions");
      }
    }
  }
  if (target.order == 0) throw UsageError("target order must be positive");
}

// Attach a variance with the spec'd floor-at-zero behavior.
void attach_variance(Estimate& est, double raw, VarianceMethod method) {
  est.variance_method = method;
  if (raw < 0.0) {
    est.variance = 0.0;
    est.variance_floored = true;
  } else {
    est.variance = raw;
  }
}

}  // namespace

Profiles profile_sample(const EgonetSample& sample, const ProfileOptions& opts,
                        const Executor* executor) {
  const Executor& exec = executor ? *executor : Executor::serial();
  Profiles profiles(sample.size());
  exec.parallel_for(sample.size(), [&](std::size_t i) {
    profiles[i] = profile_ego(sample.egonets[i], opts);
  });
  return profiles;
}

Estimate estimate_cds(const EgonetSample& sample, const Profiles& profiles,
                      const TargetKey& target) {
  check_profiles(sample, profiles, target);
  const SamplingDesign& d = sample.design;
  if (d.kind == DesignKind::wis && d.weight_mode == WeightMode::proportional_only) {
    throw UsageError(
        "design has proportional-only weights; use estimate_cds_generalized");
  }

  const double i = static_cast<double>(target.order);
  double degree_sum = 0.0;  // D^_* = sum d_*(H_j)/p_j
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    const std::uint64_t deg = profile_degree(profiles[j], target);
    if (deg == 0) continue;
    degree_sum +=
        static_cast<double>(deg) / node_inclusion_prob(d, sample.egonets[j].ego_id);
  }

  Estimate est;
  est.target = target;
  est.estimator = EstimatorKind::cds_ht;
  est.design_digest = design_digest(d);
  est.value = degree_sum / i;

  if (d.kind == DesignKind::uis) {
    attach_variance(est, estimate_var_ht(sample, profiles, target),
                    VarianceMethod::ht_joint);
  } else if (sample.size() >= 2) {
    attach_variance(est, estimate_var_bh(sample, profiles, target, est.value),
                    VarianceMethod::bh);
  }
  return est;
}

Estimate estimate_cds_generalized(const EgonetSample& sample, const Profiles& profiles,
                                  const TargetKey& target) {
  check_profiles(sample, profiles, target);
  const SamplingDesign& d = sample.design;
  if (d.kind != DesignKind::wis || d.weight_mode != WeightMode::proportional_only) {
    throw UsageError(
        "generalized estimator is for proportional-only weights; use estimate_cds");
  }

  const double i = static_cast<double>(target.order);
  const double population = static_cast<double>(d.population);
  double weighted_degrees = 0.0;  // sum_j d_*(H_j)/w_j
  double inverse_weights = 0.0;   // sum_j 1/w_j
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    const OriginalId ego = sample.egonets[j].ego_id;
    const auto it = d.weights.find(ego);
    if (it == d.weights.end() || it->second <= 0.0) {
      throw Error("nonpositive or missing weight for ego " + std::to_string(ego));
    }
    weighted_degrees += static_cast<double>(profile_degree(profiles[j], target)) / it->second;
    inverse_weights += 1.0 / it->second;
  }

  Estimate est;
  est.target = target;
  est.estimator = EstimatorKind::cds_ght;
  est.design_digest = design_digest(d);
  est.value = (population / i) * (weighted_degrees / inverse_weights);

  if (sample.size() >= 2) {
    attach_variance(est, estimate_var_bh(sample, profiles, target, est.value),
                    VarianceMethod::bh);
  }
  return est;
}

Estimate estimate_cds_auto(const EgonetSample& sample, const Profiles& profiles,
                           const TargetKey& target) {
  if (sample.design.kind == DesignKind::wis &&
      sample.design.weight_mode == WeightMode::proportional_only) {
    return estimate_cds_generalized(sample, profiles, target);
  }
  return estimate_cds(sample, profiles, target);
}

double estimate_var_ht(const EgonetSample& sample, const Profiles& profiles,
                       const TargetKey& target) {
  check_profiles(sample, profiles, target);
  const SamplingDesign& d = sample.design;
  if (d.kind != DesignKind::uis) {
    throw UnsupportedDesignError(
        "joint inclusion probabilities unavailable; fall back to Brewer-Hanif");
  }
  const double i = static_cast<double>(target.order);
  const std::size_t n = profiles.size();

  // Under UIS all p_j are equal and all p_jk are equal, so the pairwise
  // double sum collapses: 2*sum_{j<k} y_j y_k = (sum y)^2 - sum y^2.
  const double p = node_inclusion_prob(d, 0);
  double sum_y = 0.0, sum_y2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double y = static_cast<double>(profile_degree(profiles[j], target)) / i;
    sum_y += y;
    sum_y2 += y * y;
  }
  double var = (1.0 / (p * p) - 1.0 / p) * sum_y2;
  if (n >= 2) {
    const double q = joint_inclusion_prob(d, sample.egonets[0].ego_id,
                                          sample.egonets[1].ego_id);
    var += (1.0 / (p * p) - 1.0 / q) * (sum_y * sum_y - sum_y2);
  }
  return var;
}

double estimate_var_bh(const EgonetSample& sample, const Profiles& profiles,
                       const TargetKey& target, double point_estimate) {
  check_profiles(sample, profiles, target);
  const SamplingDesign& d = sample.design;
  const std::size_t n = profiles.size();
  if (n < 2) throw UsageError("Brewer-Hanif variance needs at least two egos");

  const double i = static_cast<double>(target.order);
  const double population = static_cast<double>(d.population);
  const bool exact = !(d.kind == DesignKind::wis &&
                       d.weight_mode == WeightMode::proportional_only);

  // w_j = p_j when exact probabilities exist, else the raw weights.
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const OriginalId ego = sample.egonets[j].ego_id;
    if (exact) {
      w[j] = node_inclusion_prob(d, ego);
    } else {
      const auto it = d.weights.find(ego);
      if (it == d.weights.end() || it->second <= 0.0) {
        throw Error("nonpositive or missing weight for ego " + std::to_string(ego));
      }
      w[j] = it->second;
    }
  }

  double inv_sum = 0.0;
  for (const double wj : w) inv_sum += 1.0 / wj;

  // Per-ego expansion term. The N/(sum_k 1/w_k) factor normalizes the
  // weights so the terms average to the point estimate; with equal exact
  // probabilities this reduces to the classic N*(N-n)*s^2/n form.
  double sum_sq = 0.0;
  const double nd = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double deg = static_cast<double>(profile_degree(profiles[j], target));
    const double term = nd * population * (deg / w[j]) / (i * inv_sum);
    const double dev = term - point_estimate;
    sum_sq += dev * dev;
  }
  return (population - nd) / (nd * (nd - 1.0) * population) * sum_sq;
}

DistinctCliquePool build_clique_pool(const EgonetSample& sample, const Profiles& profiles,
                                     std::uint64_t cap) {
  if (!sample.labeled) {
    throw UsageError("distinct clique counting requires a labeled sample");
  }
  if (profiles.size() != sample.size()) {
    throw UsageError("profile count does not match sample size");
  }
  DistinctCliquePool pool;
  pool.ego_sample_size = sample.size();
  pool.design_digest = design_digest(sample.design);
  for (const auto& profile : profiles) {
    if (!profile.labeled) {
      throw UsageError("profile for ego " + std::to_string(profile.ego_id) +
                       " carries no labeled cliques");
    }
    for (const auto& rec : profile.distinct_cliques) {
      if (rec.oversized) {
        throw UsageError(
            "oversized (truncated) cliques cannot be pooled; rerun without a cap");
      }
      auto [it, inserted] = pool.cliques.try_emplace(rec.members);
      if (inserted) {
        it->second.clique = rec;
        it->second.inclusion_prob = clique_inclusion_prob(sample.design, rec);
        if (pool.cliques.size() > cap) {
          throw BudgetExceededError(
              "distinct clique pool exceeded cap of " + std::to_string(cap) +
                  "; the clique degree sum estimator needs no pool",
              std::to_string(pool.cliques.size()) + " cliques pooled");
        }
      }
    }
  }
  return pool;
}

Estimate estimate_cc(const DistinctCliquePool& pool, const TargetKey& target) {
  if (target.order == 0) throw UsageError("target order must be positive");
  if (target.composition && !pool.cliques.empty() &&
      pool.cliques.begin()->second.clique.composition.empty()) {
    throw UsageError("composition target but pooled cliques carry no compositions");
  }
  Estimate est;
  est.target = target;
  est.estimator = EstimatorKind::cc;
  est.design_digest = pool.design_digest;

  double value = 0.0;
  for (const auto& [members, entry] : pool.cliques) {
    (void)members;
    const bool match = target.composition
                           ? entry.clique.composition == *target.composition
                           : entry.clique.order == target.order;
    if (match) value += 1.0 / entry.inclusion_prob;
  }
  est.value = value;

  const auto var = estimate_var_bh_cc(pool, target, value);
  if (var) {
    est.variance_method = VarianceMethod::bh;
    est.variance = *var < 0.0 ? 0.0 : *var;
    est.variance_floored = *var < 0.0;
  }
  return est;
}

std::optional<double> estimate_var_bh_cc(const DistinctCliquePool& pool,
                                         const TargetKey& target, double point_estimate) {
  std::vector<double> pis;
  for (const auto& [members, entry] : pool.cliques) {
    (void)members;
    const bool match = target.composition
                           ? entry.clique.composition == *target.composition
                           : entry.clique.order == target.order;
    if (match) pis.push_back(entry.inclusion_prob);
  }
  const double observed = static_cast<double>(pis.size());  // c'_*
  if (pis.size() < 2 || point_estimate == 0.0) return std::nullopt;

  const double n = static_cast<double>(pool.ego_sample_size);
  double sum_sq = 0.0;
  for (const double pi : pis) {
    const double dev = n * observed / pi - point_estimate;
    sum_sq += dev * dev;
  }
  const double lead =
      (point_estimate - observed) / (observed * (observed - 1.0) * point_estimate);
  return lead * sum_sq;
}

std::vector<TargetKey> realized_targets(const Profiles& profiles) {
  std::set<std::uint32_t> orders;
  std::set<Composition> comps;
  for (const auto& p : profiles) {
    for (const auto& [o, c] : p.degree_by_order) {
      (void)c;
      orders.insert(o);
    }
    for (const auto& [u, c] : p.degree_by_composition) {
      (void)c;
      comps.insert(u);
    }
  }
  std::vector<TargetKey> targets;
  targets.reserve(orders.size() + comps.size());
  for (const auto o : orders) targets.push_back(TargetKey::for_order(o));
  for (const auto& u : comps) targets.push_back(TargetKey::for_composition(u));
  return targets;
}

std::vector<Estimate> estimate_cds_all(const EgonetSample& sample,
                                       const Profiles& profiles) {
  std::vector<Estimate> out;
  for (const auto& t : realized_targets(profiles)) {
    out.push_back(estimate_cds_auto(sample, profiles, t));
  }
  return out;
}

std::vector<Estimate> estimate_cc_all(const EgonetSample& sample, const Profiles& profiles,
                                      std::uint64_t cap) {
  const DistinctCliquePool pool = build_clique_pool(sample, profiles, cap);
  std::vector<Estimate> out;
  for (const auto& t : realized_targets(profiles)) {
    out.push_back(estimate_cc(pool, t));
  }
  return out;
}

}  // namespace cliquedist
