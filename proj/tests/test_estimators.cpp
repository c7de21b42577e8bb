#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cliquedist/error.hpp"
#include "cliquedist/estimators.hpp"
#include "testutil.hpp"

using namespace cliquedist;
using doctest::Approx;

namespace {

constexpr double kTol = 1e-12;

// sample with explicitly chosen egos (original ids)
EgonetSample make_sample(const Graph& g, const SamplingDesign& d,
                         const std::vector<OriginalId>& egos, bool labeled = true,
                         const std::vector<std::uint32_t>& mult = {}) {
  EgonetSample s;
  s.draws = d.draws;
  s.design = d;
  s.labeled = labeled;
  s.category_names = g.category_names();
  for (std::size_t i = 0; i < egos.size(); ++i) {
    s.egonets.push_back(extract_egonet(g, *g.dense_id(egos[i]), labeled));
    s.multiplicities.push_back(mult.empty() ? 1 : mult[i]);
  }
  return s;
}

EgonetSample census_sample(const Graph& g, bool labeled = true) {
  const auto d = SamplingDesign::uis(Replacement::without_replacement,
                                     g.node_count(), g.node_count());
  std::vector<OriginalId> egos;
  for (NodeId v = 0; v < g.node_count(); ++v) egos.push_back(g.original_id(v));
  return make_sample(g, d, egos, labeled);
}

}  // namespace

TEST_CASE("census sample reproduces the clique distribution exactly") {
  for (const Graph& g : {testutil::g6(), testutil::g6_pendant(), testutil::k4()}) {
    const auto sample = census_sample(g);
    const auto profiles = profile_sample(sample);
    const auto truth = census(g);
    for (const auto& [order, count] : truth.by_order) {
      const auto est = estimate_cds(sample, profiles, TargetKey::for_order(order));
      CHECK(est.value == Approx(static_cast<double>(count)).epsilon(kTol));
      REQUIRE(est.variance.has_value());
      CHECK(*est.variance == Approx(0.0).epsilon(kTol));
    }
  }
}

TEST_CASE("g6 single-ego WOR sample: the bridge ego") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 1, 6);
  const auto sample = make_sample(g, d, {3});
  const auto profiles = profile_sample(sample);

  const auto c3 = estimate_cds(sample, profiles, TargetKey::for_order(3));
  CHECK(c3.value == Approx(2.0).epsilon(kTol));
  const auto c2 = estimate_cds(sample, profiles, TargetKey::for_order(2));
  CHECK(c2.value == Approx(3.0).epsilon(kTol));
  CHECK(c3.estimator == EstimatorKind::cds_ht);
  CHECK(c3.variance_method == VarianceMethod::ht_joint);
}

TEST_CASE("averaging the single-ego estimates over all egos recovers the truth") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 1, 6);
  double sum2 = 0.0, sum3 = 0.0;
  for (OriginalId ego = 1; ego <= 6; ++ego) {
    const auto sample = make_sample(g, d, {ego});
    const auto profiles = profile_sample(sample);
    sum2 += estimate_cds(sample, profiles, TargetKey::for_order(2)).value;
    sum3 += estimate_cds(sample, profiles, TargetKey::for_order(3)).value;
  }
  CHECK(sum2 / 6.0 == Approx(1.0).epsilon(kTol));  // C_2 = 1
  CHECK(sum3 / 6.0 == Approx(2.0).epsilon(kTol));  // C_3 = 2
}

TEST_CASE("generalized estimator with equal weights is the expansion estimator") {
  const Graph g = testutil::g6();
  std::unordered_map<OriginalId, double> w;
  for (OriginalId v = 1; v <= 6; ++v) w[v] = 3.5;
  const auto d = SamplingDesign::wis(Replacement::with_replacement, 2, 6, w,
                                     WeightMode::proportional_only);
  const auto sample = make_sample(g, d, {1, 4});
  const auto profiles = profile_sample(sample);
  const auto est = estimate_cds_generalized(sample, profiles, TargetKey::for_order(3));
  // (N/(n*i)) * sum d = (6/(2*3)) * 2 = 2
  CHECK(est.value == Approx(2.0).epsilon(kTol));
  CHECK(est.estimator == EstimatorKind::cds_ght);
}

TEST_CASE("generalized estimator is invariant to weight rescaling") {
  const Graph g = testutil::g6_pendant();
  std::unordered_map<OriginalId, double> w1, w2;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const OriginalId id = g.original_id(v);
    w1[id] = static_cast<double>(g.degree(v));
    w2[id] = 13.7 * w1[id];
  }
  const auto d1 = SamplingDesign::wis(Replacement::with_replacement, 3, 7, w1,
                                      WeightMode::proportional_only);
  const auto d2 = SamplingDesign::wis(Replacement::with_replacement, 3, 7, w2,
                                      WeightMode::proportional_only);
  const auto s1 = make_sample(g, d1, {1, 3, 5});
  const auto s2 = make_sample(g, d2, {1, 3, 5});
  const auto p1 = profile_sample(s1);
  for (const std::uint32_t i : {2u, 3u}) {
    const auto a = estimate_cds_generalized(s1, p1, TargetKey::for_order(i));
    const auto b = estimate_cds_generalized(s2, p1, TargetKey::for_order(i));
    CHECK(a.value == Approx(b.value).epsilon(kTol));
  }
}

TEST_CASE("generalized estimator, degree weights, single bridge ego") {
  const Graph g = testutil::g6();
  auto d = SamplingDesign::wis_degree(Replacement::with_replacement, 1, g,
                                      WeightMode::proportional_only);
  const auto sample = make_sample(g, d, {3});
  const auto profiles = profile_sample(sample);
  const auto est = estimate_cds_generalized(sample, profiles, TargetKey::for_order(3));
  // (6/3) * ((1/3)/(1/3)) = 2
  CHECK(est.value == Approx(2.0).epsilon(kTol));
  CHECK(!est.variance.has_value());  // single ego: Brewer-Hanif undefined
}

TEST_CASE("basic estimator refuses proportional-only designs") {
  const Graph g = testutil::g6();
  auto d = SamplingDesign::wis_degree(Replacement::with_replacement, 1, g,
                                      WeightMode::proportional_only);
  const auto sample = make_sample(g, d, {3});
  const auto profiles = profile_sample(sample);
  CHECK_THROWS_AS(estimate_cds(sample, profiles, TargetKey::for_order(3)), UsageError);
  // and the auto dispatcher picks the generalized form
  const auto est = estimate_cds_auto(sample, profiles, TargetKey::for_order(3));
  CHECK(est.estimator == EstimatorKind::cds_ght);
}

TEST_CASE("composition target without attributes is an error") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);
  const auto sample = make_sample(g, d, {3, 5});
  const auto profiles = profile_sample(sample);
  CHECK_THROWS_AS(
      estimate_cds(sample, profiles, TargetKey::for_composition({2, 1})), UsageError);
}

TEST_CASE("clique pool unions distinct cliques across egonets") {
  const Graph fig = testutil::two_three_two_four();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 3, 14);
  const auto sample = make_sample(fig, d, {1, 6, 9});
  const auto profiles = profile_sample(sample);
  const auto pool = build_clique_pool(sample, profiles);
  REQUIRE(pool.size() == 2);  // the 4-clique seen from egos 6 and 9 pools once
  CHECK(pool.cliques.count({1, 2, 5}) == 1);
  CHECK(pool.cliques.count({6, 7, 8, 9}) == 1);
}

TEST_CASE("single egonet pool is that ego's cliques") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 1, 6);
  const auto sample = make_sample(g, d, {3});
  const auto pool = build_clique_pool(sample, profile_sample(sample));
  REQUIRE(pool.size() == 2);
  CHECK(pool.cliques.count({1, 2, 3}) == 1);
  CHECK(pool.cliques.count({3, 4}) == 1);
}

TEST_CASE("g6 pool for egos 3 and 4") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);
  const auto sample = make_sample(g, d, {3, 4});
  const auto pool = build_clique_pool(sample, profile_sample(sample));
  REQUIRE(pool.size() == 3);
  CHECK(pool.cliques.count({1, 2, 3}) == 1);
  CHECK(pool.cliques.count({3, 4}) == 1);
  CHECK(pool.cliques.count({4, 5, 6}) == 1);
}

TEST_CASE("pool cap aborts with budget error") {
  const Graph g = testutil::g6();
  const auto sample = census_sample(g);
  CHECK_THROWS_AS(build_clique_pool(sample, profile_sample(sample), 2),
                  BudgetExceededError);
}

TEST_CASE("distinct clique counting on g6 WOR pairs") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);

  const auto s14 = make_sample(g, d, {1, 4});
  const auto pool14 = build_clique_pool(s14, profile_sample(s14));
  const auto est14 = estimate_cc(pool14, TargetKey::for_order(3));
  CHECK(est14.value == Approx(2.5).epsilon(kTol));  // two cliques at pi = 0.8
  REQUIRE(est14.variance.has_value());
  CHECK(*est14.variance == Approx(1.25).epsilon(kTol));

  const auto s12 = make_sample(g, d, {1, 2});
  const auto pool12 = build_clique_pool(s12, profile_sample(s12));
  const auto est12 = estimate_cc(pool12, TargetKey::for_order(3));
  CHECK(est12.value == Approx(1.25).epsilon(kTol));  // only {1,2,3}
  CHECK(!est12.variance.has_value());                // c' = 1: absent, not zero
}

TEST_CASE("CC requires labels") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);
  const auto sample = make_sample(g, d, {1, 4}, /*labeled=*/false);
  CHECK_THROWS_AS(build_clique_pool(sample, profile_sample(sample)), UsageError);
}

TEST_CASE("CC and CDS agree exactly on census samples") {
  for (const Graph& g : {testutil::g6_attributed(), testutil::g6_pendant()}) {
    const auto sample = census_sample(g);
    const auto profiles = profile_sample(sample);
    const auto pool = build_clique_pool(sample, profiles);
    for (const auto& target : realized_targets(profiles)) {
      const auto cds = estimate_cds(sample, profiles, target);
      const auto cc = estimate_cc(pool, target);
      CHECK(cds.value == Approx(cc.value).epsilon(kTol));
    }
  }
}

TEST_CASE("variance via joint probabilities is zero for a census") {
  const Graph g = testutil::g6();
  const auto sample = census_sample(g);
  const auto profiles = profile_sample(sample);
  CHECK(estimate_var_ht(sample, profiles, TargetKey::for_order(3)) ==
        Approx(0.0).epsilon(kTol));
}

TEST_CASE("variance is zero when the statistic is identically zero") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);
  const auto sample = make_sample(g, d, {1, 5});
  const auto profiles = profile_sample(sample);
  // no maximal 4-cliques anywhere
  CHECK(estimate_var_ht(sample, profiles, TargetKey::for_order(4)) ==
        Approx(0.0).epsilon(kTol));
  CHECK(estimate_var_bh(sample, profiles, TargetKey::for_order(4), 0.0) ==
        Approx(0.0).epsilon(kTol));
}

TEST_CASE("g6 WOR pairs: per-sample joint variance vanishes since d_3 is constant") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);
  for (OriginalId a = 1; a <= 6; ++a) {
    for (OriginalId b = a + 1; b <= 6; ++b) {
      const auto sample = make_sample(g, d, {a, b});
      const auto profiles = profile_sample(sample);
      CHECK(estimate_var_ht(sample, profiles, TargetKey::for_order(3)) ==
            Approx(0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("joint-probability variance estimator is design-unbiased on g6+pendant") {
  const Graph g = testutil::g6_pendant();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 3, 7);
  const TargetKey t3 = TargetKey::for_order(3);

  auto cds_value = [&](const EgonetSample& s, const Profiles& p) {
    return estimate_cds(s, p, t3).value;
  };
  const double true_var = testutil::design_variance(g, d, true, cds_value);
  CHECK(true_var == Approx(4.0 / 27.0).epsilon(1e-10));  // hand-computed

  const double mean_var = testutil::design_expectation(
      g, d, true,
      [&](const EgonetSample& s, const Profiles& p) {
        return estimate_var_ht(s, p, t3);
      });
  CHECK(mean_var == Approx(true_var).epsilon(1e-10));
}

TEST_CASE("Brewer-Hanif: zero spread gives zero variance") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);
  const auto sample = make_sample(g, d, {2, 5});
  const auto profiles = profile_sample(sample);
  const auto est = estimate_cds(sample, profiles, TargetKey::for_order(3));
  // every ego has d_3 = 1, so the expansion terms are identical
  CHECK(estimate_var_bh(sample, profiles, TargetKey::for_order(3), est.value) ==
        Approx(0.0).epsilon(kTol));
}

TEST_CASE("Brewer-Hanif: census finite-population factor kills the variance") {
  const Graph g = testutil::g6();
  const auto sample = census_sample(g);
  const auto profiles = profile_sample(sample);
  const auto est = estimate_cds(sample, profiles, TargetKey::for_order(2));
  CHECK(estimate_var_bh(sample, profiles, TargetKey::for_order(2), est.value) ==
        Approx(0.0).epsilon(kTol));
}

TEST_CASE("Brewer-Hanif is conservative on g6+pendant") {
  const Graph g = testutil::g6_pendant();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 3, 7);
  const TargetKey t3 = TargetKey::for_order(3);

  auto cds_value = [&](const EgonetSample& s, const Profiles& p) {
    return estimate_cds(s, p, t3).value;
  };
  const double true_var = testutil::design_variance(g, d, true, cds_value);
  const double mean_bh = testutil::design_expectation(
      g, d, true, [&](const EgonetSample& s, const Profiles& p) {
        return estimate_var_bh(s, p, t3, estimate_cds(s, p, t3).value);
      });
  CHECK(mean_bh >= true_var - 1e-10);
}

TEST_CASE("Brewer-Hanif needs at least two egos") {
  const Graph g = testutil::g6();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 1, 6);
  const auto sample = make_sample(g, d, {3});
  const auto profiles = profile_sample(sample);
  CHECK_THROWS_AS(estimate_var_bh(sample, profiles, TargetKey::for_order(3), 2.0),
                  UsageError);
}

TEST_CASE("CC variance is zero on census samples") {
  const Graph g = testutil::g6();
  const auto sample = census_sample(g);
  const auto pool = build_clique_pool(sample, profile_sample(sample));
  const auto est = estimate_cc(pool, TargetKey::for_order(3));
  CHECK(est.value == Approx(2.0).epsilon(kTol));
  REQUIRE(est.variance.has_value());
  CHECK(*est.variance == Approx(0.0).epsilon(kTol));
}

TEST_CASE("design unbiasedness of CDS and CC on small graphs") {
  // light version of the acceptance sweep: g6 for WOR/WR, both targets
  const Graph g = testutil::g6();
  const auto truth = census(g);
  for (const auto replacement :
       {Replacement::without_replacement, Replacement::with_replacement}) {
    for (const std::uint64_t draws : {1ULL, 2ULL, 3ULL}) {
      const auto d = SamplingDesign::uis(replacement, draws, 6);
      for (const auto& [order, count] : truth.by_order) {
        const TargetKey target = TargetKey::for_order(order);
        const double e_cds = testutil::design_expectation(
            g, d, true, [&](const EgonetSample& s, const Profiles& p) {
              return estimate_cds(s, p, target).value;
            });
        CHECK(e_cds == Approx(static_cast<double>(count)).epsilon(1e-12));
        const double e_cc = testutil::design_expectation(
            g, d, true, [&](const EgonetSample& s, const Profiles& p) {
              return estimate_cc(build_clique_pool(s, p), target).value;
            });
        CHECK(e_cc == Approx(static_cast<double>(count)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("composition estimates are unbiased and consistent on attributed g6") {
  const Graph g = testutil::g6_attributed();
  const auto truth = census(g);
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 2, 6);

  for (const auto& [u, count] : truth.by_composition) {
    const TargetKey target = TargetKey::for_composition(u);
    const double e_cds = testutil::design_expectation(
        g, d, true, [&](const EgonetSample& s, const Profiles& p) {
          return estimate_cds(s, p, target).value;
        });
    CHECK(e_cds == Approx(static_cast<double>(count)).epsilon(1e-12));
    const double e_cc = testutil::design_expectation(
        g, d, true, [&](const EgonetSample& s, const Profiles& p) {
          return estimate_cc(build_clique_pool(s, p), target).value;
        });
    CHECK(e_cc == Approx(static_cast<double>(count)).epsilon(1e-12));
  }

  // composition consistency: sum over |u| = i of C^_u equals C^_i
  const auto sample = make_sample(g, d, {2, 4});
  const auto profiles = profile_sample(sample);
  for (const std::uint32_t i : {2u, 3u}) {
    double total = 0.0;
    for (const auto& [u, count] : truth.by_composition) {
      (void)count;
      if (composition_order(u) == i) {
        total += estimate_cds(sample, profiles, TargetKey::for_composition(u)).value;
      }
    }
    const double direct = estimate_cds(sample, profiles, TargetKey::for_order(i)).value;
    CHECK(total == Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("WR estimation is unbiased with repeated egos collapsed") {
  const Graph g = testutil::g6_pendant();
  const auto d = SamplingDesign::uis(Replacement::with_replacement, 2, 7);
  const auto truth = census(g);
  for (const auto& [order, count] : truth.by_order) {
    const TargetKey target = TargetKey::for_order(order);
    const double e_cds = testutil::design_expectation(
        g, d, true, [&](const EgonetSample& s, const Profiles& p) {
          return estimate_cds(s, p, target).value;
        });
    CHECK(e_cds == Approx(static_cast<double>(count)).epsilon(1e-12));
  }
}

TEST_CASE("WIS WR estimation is unbiased with exact probabilities") {
  const Graph g = testutil::g6();
  std::unordered_map<OriginalId, double> w;
  for (NodeId v = 0; v < 6; ++v) {
    w[g.original_id(v)] = static_cast<double>(g.degree(v));
  }
  const auto d = SamplingDesign::wis(Replacement::with_replacement, 2, 6, w);
  const auto truth = census(g);
  for (const auto& [order, count] : truth.by_order) {
    const TargetKey target = TargetKey::for_order(order);
    const double e_cds = testutil::design_expectation(
        g, d, true, [&](const EgonetSample& s, const Profiles& p) {
          return estimate_cds(s, p, target).value;
        });
    CHECK(e_cds == Approx(static_cast<double>(count)).epsilon(1e-12));
    const double e_cc = testutil::design_expectation(
        g, d, true, [&](const EgonetSample& s, const Profiles& p) {
          return estimate_cc(build_clique_pool(s, p), target).value;
        });
    CHECK(e_cc == Approx(static_cast<double>(count)).epsilon(1e-12));
  }
}

TEST_CASE("the estimator divides a degree-sum estimate by the order") {
  const Graph g = testutil::g6_pendant();
  const auto d = SamplingDesign::uis(Replacement::without_replacement, 3, 7);
  const auto sample = make_sample(g, d, {1, 3, 7});
  const auto profiles = profile_sample(sample);
  for (const std::uint32_t i : {2u, 3u}) {
    double degree_sum = 0.0;
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      degree_sum += static_cast<double>(profiles[j].degree(i)) /
                    node_inclusion_prob(d, sample.egonets[j].ego_id);
    }
    const auto est = estimate_cds(sample, profiles, TargetKey::for_order(i));
    CHECK(est.value == Approx(degree_sum / i).epsilon(1e-12));
  }
}
