#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cliquedist/cliques.hpp"
#include "cliquedist/error.hpp"
#include "testutil.hpp"

using namespace cliquedist;

namespace {

std::vector<std::vector<OriginalId>> sorted_members(const std::vector<CliqueRecord>& recs) {
  std::vector<std::vector<OriginalId>> out;
  for (const auto& r : recs) out.push_back(r.members);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CliqueRecord> enumerate_graph(const Graph& g,
                                          std::optional<std::uint32_t> cap = {}) {
  std::vector<OriginalId> members;
  std::vector<std::pair<OriginalId, OriginalId>> edges;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    members.push_back(g.original_id(v));
    for (const NodeId w : g.neighbors(v)) {
      if (v < w) edges.emplace_back(g.original_id(v), g.original_id(w));
    }
  }
  return enumerate_maximal_cliques(members, edges, cap);
}

}  // namespace

TEST_CASE("K4 is one maximal clique") {
  const auto recs = enumerate_graph(testutil::k4());
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].members == std::vector<OriginalId>{1, 2, 3, 4});
  CHECK(recs[0].order == 4);
}

TEST_CASE("g6 maximal cliques are the two triangles and the bridge") {
  const auto recs = enumerate_graph(testutil::g6());
  CHECK(sorted_members(recs) ==
        std::vector<std::vector<OriginalId>>{{1, 2, 3}, {3, 4}, {4, 5, 6}});
}

TEST_CASE("enumeration matches subset brute force on random graphs") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (const double p : {0.15, 0.4, 0.75}) {
      const Graph g = testutil::random_graph(n, p, 1000 + n);
      CHECK(sorted_members(enumerate_graph(g)) == testutil::brute_maximal_cliques(g));
    }
  }
  // a couple of denser, larger pulls
  for (const std::uint64_t seed : {5ULL, 6ULL}) {
    const Graph g = testutil::random_graph(17, 0.5, seed);
    CHECK(sorted_members(enumerate_graph(g)) == testutil::brute_maximal_cliques(g));
  }
}

TEST_CASE("every output clique is complete, maximal and unique") {
  const Graph g = testutil::random_graph(18, 0.45, 42);
  const auto recs = enumerate_graph(g);
  std::set<std::vector<OriginalId>> seen;
  for (const auto& rec : recs) {
    CHECK(seen.insert(rec.members).second);  // no duplicates
    // complete
    for (std::size_t a = 0; a < rec.members.size(); ++a) {
      for (std::size_t b = a + 1; b < rec.members.size(); ++b) {
        CHECK(g.has_edge(*g.dense_id(rec.members[a]), *g.dense_id(rec.members[b])));
      }
    }
    // maximal: no vertex extends it
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (std::binary_search(rec.members.begin(), rec.members.end(), g.original_id(v)))
        continue;
      bool extends = true;
      for (const auto m : rec.members) {
        if (!g.has_edge(v, *g.dense_id(m))) {
          extends = false;
          break;
        }
      }
      CHECK(!extends);
    }
  }
}

TEST_CASE("max_order flags and truncates oversized cliques") {
  const auto recs = enumerate_graph(testutil::k4(), 3);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].oversized);
  CHECK(recs[0].order == 4);
  CHECK(recs[0].members.size() == 3);
}

TEST_CASE("star center profile sees each edge as a maximal 2-clique") {
  const Graph g = testutil::star(3);
  const auto profile = profile_ego(extract_egonet(g, *g.dense_id(1), true));
  CHECK(profile.degree_by_order == std::map<std::uint32_t, std::uint64_t>{{2, 3}});
}

TEST_CASE("g6 ego 3 profile") {
  const Graph g = testutil::g6();
  const auto profile = profile_ego(extract_egonet(g, *g.dense_id(3), true));
  CHECK(profile.degree_by_order ==
        std::map<std::uint32_t, std::uint64_t>{{2, 1}, {3, 1}});
  REQUIRE(profile.distinct_cliques.size() == 2);
  const auto members = sorted_members(profile.distinct_cliques);
  CHECK(members == std::vector<std::vector<OriginalId>>{{1, 2, 3}, {3, 4}});
}

TEST_CASE("g6 attributed ego 3 composition degrees") {
  const Graph g = testutil::g6_attributed();
  const auto profile = profile_ego(extract_egonet(g, *g.dense_id(3), true));
  REQUIRE(profile.has_compositions);
  // categories (F, M): {3,4} -> (0,2), {1,2,3} -> (2,1)
  const std::map<Composition, std::uint64_t> expected{{{0, 2}, 1}, {{2, 1}, 1}};
  CHECK(profile.degree_by_composition == expected);
}

TEST_CASE("profile of an isolated ego is a single 1-clique") {
  Egonet lonely;
  lonely.ego_id = 7;
  lonely.labeled = true;
  const auto profile = profile_ego(lonely);
  CHECK(profile.degree_by_order == std::map<std::uint32_t, std::uint64_t>{{1, 1}});
}

TEST_CASE("missing attribute in an attributed egonet names the member") {
  const Graph g = testutil::g6_attributed();
  Egonet e = extract_egonet(g, *g.dense_id(3), true);
  e.categories[1] = 0;  // knock out neighbor 1
  try {
    profile_ego(e);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("profile equals whole-egonet enumeration filtered to the ego") {
  for (const std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    const Graph g = testutil::random_graph(16, 0.4, seed);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const Egonet e = extract_egonet(g, v, true);
      const auto profile = profile_ego(e);

      std::vector<OriginalId> members{e.ego_id};
      members.insert(members.end(), e.neighbor_ids.begin(), e.neighbor_ids.end());
      std::vector<std::pair<OriginalId, OriginalId>> edges;
      for (const auto& [a, b] : e.edges) {
        edges.emplace_back(a == 0 ? e.ego_id : e.neighbor_ids[a - 1],
                           b == 0 ? e.ego_id : e.neighbor_ids[b - 1]);
      }
      std::vector<std::vector<OriginalId>> expected;
      for (const auto& rec : enumerate_maximal_cliques(members, edges)) {
        if (std::binary_search(rec.members.begin(), rec.members.end(), e.ego_id)) {
          expected.push_back(rec.members);
        }
      }
      std::sort(expected.begin(), expected.end());
      CHECK(sorted_members(profile.distinct_cliques) == expected);
    }
  }
}

TEST_CASE("g6 census") {
  const auto result = census(testutil::g6());
  CHECK(result.by_order == CliqueDistribution{{2, 1}, {3, 2}});
  CHECK(result.total_cliques == 3);
  CHECK(result.max_order == 3);
}

TEST_CASE("census of the two-three two-four graph gives C=(0,0,2,2)") {
  const auto result = census(testutil::two_three_two_four());
  CHECK(result.by_order == CliqueDistribution{{3, 2}, {4, 2}});
}

TEST_CASE("attributed census marginalizes to the order distribution") {
  const auto result = census(testutil::g6_attributed());
  CHECK(result.by_order == CliqueDistribution{{2, 1}, {3, 2}});
  const CompositionDistribution expected{{{0, 2}, 1}, {{2, 1}, 2}};
  CHECK(result.by_composition == expected);
  // marginalization invariant on a random attributed graph
  std::map<std::uint32_t, std::uint64_t> marginal;
  for (const auto& [u, c] : result.by_composition) marginal[composition_order(u)] += c;
  CHECK(marginal == result.by_order);
}

TEST_CASE("census matches brute force on random graphs") {
  for (const std::uint64_t seed : {21ULL, 22ULL, 23ULL, 24ULL}) {
    const Graph g = testutil::random_graph(15, 0.35, seed);
    const auto result = census(g);
    CHECK(result.by_order ==
          testutil::distribution_of(testutil::brute_maximal_cliques(g)));
  }
}

TEST_CASE("degree sums over all egos satisfy D_i = i * C_i") {
  const Graph g = testutil::random_graph(20, 0.3, 31);
  const auto truth = census(g);
  std::map<std::uint32_t, std::uint64_t> degree_sum;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto profile = profile_ego(extract_egonet(g, v, true));
    for (const auto& [o, d] : profile.degree_by_order) degree_sum[o] += d;
  }
  for (const auto& [o, c] : truth.by_order) {
    CHECK(degree_sum[o] == static_cast<std::uint64_t>(o) * c);
  }
  CHECK(degree_sum.size() == truth.by_order.size());
}

TEST_CASE("census budget aborts with a progress report") {
  CensusOptions opts;
  opts.budget = 2;
  CHECK_THROWS_AS(census(testutil::g6(), opts), BudgetExceededError);
}

TEST_CASE("all-clique mode counts every complete subgraph up to the cap") {
  // K4: C_1..C_4 = 4, 6, 4, 1
  CensusOptions opts;
  opts.mode = EnumMode::all_up_to_order;
  opts.max_order = 3;
  const auto result = census(testutil::k4(), opts);
  CHECK(result.by_order == CliqueDistribution{{1, 4}, {2, 6}, {3, 4}});

  ProfileOptions popts;
  popts.mode = EnumMode::all_up_to_order;
  popts.max_order = 3;
  const Graph g = testutil::k4();
  const auto profile = profile_ego(extract_egonet(g, 0, true), popts);
  // ego is in 1 one-clique, 3 edges, 3 triangles
  CHECK(profile.degree_by_order ==
        std::map<std::uint32_t, std::uint64_t>{{1, 1}, {2, 3}, {3, 3}});
}

TEST_CASE("all-clique census agrees with subset enumeration on a random graph") {
  const Graph g = testutil::random_graph(10, 0.5, 99);
  CensusOptions opts;
  opts.mode = EnumMode::all_up_to_order;
  opts.max_order = 10;
  const auto result = census(g, opts);

  // brute force: count every complete subset by order
  CliqueDistribution expected;
  const unsigned n = g.node_count();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool complete = true;
    for (unsigned a = 0; a < n && complete; ++a) {
      if (!(mask & (1u << a))) continue;
      for (unsigned b = a + 1; b < n && complete; ++b) {
        if ((mask & (1u << b)) && !g.has_edge(a, b)) complete = false;
      }
    }
    if (complete) ++expected[static_cast<std::uint32_t>(std::popcount(mask))];
  }
  CHECK(result.by_order == expected);
}

TEST_CASE("degeneracy order puts low-core vertices first") {
  const Graph g = testutil::g6_pendant();
  const auto order = degeneracy_order(g);
  CHECK(order.size() == g.node_count());
  // pendant vertex 7 (degree 1) must come out before any triangle member
  CHECK(g.original_id(order.front()) == 7);
}
