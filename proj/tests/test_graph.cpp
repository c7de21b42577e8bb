#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "cliquedist/error.hpp"
#include "cliquedist/graph.hpp"
#include "testutil.hpp"

using namespace cliquedist;

TEST_CASE("triangle loads with three nodes and three edges") {
  std::istringstream in("1 2\n2 3\n1 3\n");
  const auto loaded = load_graph(in);
  CHECK(loaded.graph.node_count() == 3);
  CHECK(loaded.graph.edge_count() == 3);
  CHECK(loaded.stats.duplicate_edges_dropped == 0);
  CHECK(loaded.stats.self_loops_dropped == 0);
}

TEST_CASE("duplicates and self loops are dropped and counted") {
  std::istringstream in("1 2\n2 1\n1 1\n");
  const auto loaded = load_graph(in);
  CHECK(loaded.graph.node_count() == 2);
  CHECK(loaded.graph.edge_count() == 1);
  CHECK(loaded.stats.duplicate_edges_dropped == 1);
  CHECK(loaded.stats.self_loops_dropped == 1);
}

TEST_CASE("comment lines and sparse ids") {
  std::istringstream in("# SNAP-style comment\n10 20\n20 30\n");
  const auto loaded = load_graph(in);
  const Graph& g = loaded.graph;
  CHECK(loaded.stats.comment_lines == 1);
  CHECK(g.node_count() == 3);
  REQUIRE(g.dense_id(20).has_value());
  CHECK(g.original_id(*g.dense_id(20)) == 20);
  CHECK(!g.dense_id(99).has_value());
}

TEST_CASE("malformed edge line reports the line number") {
  std::istringstream in("1 2\nnot an edge\n");
  CHECK_THROWS_AS(load_graph(in), ParseError);
  std::istringstream again("1 2\nnot an edge\n");
  try {
    load_graph(again);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("adjacency is symmetric, sorted and loop-free") {
  const Graph g = testutil::random_graph(30, 0.2, 77);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(nb[i] != v);
      if (i) CHECK(nb[i - 1] < nb[i]);
      CHECK(g.has_edge(nb[i], v));
    }
  }
}

TEST_CASE("attribute loading maps labels in first-appearance order") {
  const Graph g = testutil::g6_attributed();
  REQUIRE(g.attributed());
  CHECK(g.category_count() == 2);
  CHECK(g.category_names()[0] == "F");
  CHECK(g.category_names()[1] == "M");
  CHECK(g.category_of(*g.dense_id(1)) == 1);
  CHECK(g.category_of(*g.dense_id(3)) == 2);
  CHECK(g.category_of(*g.dense_id(4)) == 2);
}

TEST_CASE("attribute for unknown node is an error") {
  std::istringstream edges("1 2\n");
  std::istringstream attrs("node_id,attribute\n9,F\n");
  CHECK_THROWS_AS(load_graph(edges, attrs), ParseError);
}

TEST_CASE("egonet of a triangle vertex is the whole triangle") {
  std::istringstream in("1 2\n2 3\n1 3\n");
  const Graph g = load_graph(in).graph;
  const Egonet e = extract_egonet(g, 0, true);
  CHECK(e.member_count() == 3);
  CHECK(e.edges.size() == 3);
}

TEST_CASE("egonet of a path midpoint keeps non-adjacent neighbors apart") {
  const Graph g = testutil::path3();
  const Egonet e = extract_egonet(g, *g.dense_id(2), true);
  CHECK(e.member_count() == 3);
  CHECK(e.edges.size() == 2);  // ab and bc only
}

TEST_CASE("g6 egonet of the bridge node") {
  const Graph g = testutil::g6();
  const Egonet e = extract_egonet(g, *g.dense_id(3), true);
  std::set<OriginalId> members{e.ego_id};
  members.insert(e.neighbor_ids.begin(), e.neighbor_ids.end());
  CHECK(members == std::set<OriginalId>{1, 2, 3, 4});
  // edges 12, 13, 23, 34
  CHECK(e.edges.size() == 4);
}

TEST_CASE("unlabeled egonets use local neighbor indices") {
  const Graph g = testutil::g6();
  const Egonet e = extract_egonet(g, *g.dense_id(3), false);
  CHECK(!e.labeled);
  CHECK(e.ego_id == 3);  // egos stay identified; only neighbors are anonymized
  CHECK(e.neighbor_ids == std::vector<OriginalId>{1, 2, 3});
}

TEST_CASE("egonet out of range") {
  const Graph g = testutil::path3();
  CHECK_THROWS_AS(extract_egonet(g, 57, true), UsageError);
}

TEST_CASE("egonet edges equal the graph restricted to ego plus neighborhood") {
  // brute-force cross-check on random graphs
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Graph g = testutil::random_graph(25, 0.25, seed);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const Egonet e = extract_egonet(g, v, true);
      std::set<OriginalId> members{e.ego_id};
      members.insert(e.neighbor_ids.begin(), e.neighbor_ids.end());

      std::set<std::pair<OriginalId, OriginalId>> expected;
      for (NodeId a = 0; a < g.node_count(); ++a) {
        for (const NodeId b : g.neighbors(a)) {
          const OriginalId oa = g.original_id(a), ob = g.original_id(b);
          if (oa < ob && members.count(oa) && members.count(ob)) {
            expected.emplace(oa, ob);
          }
        }
      }
      std::set<std::pair<OriginalId, OriginalId>> got;
      for (const auto& [a, b] : e.edges) {
        const OriginalId ga = a == 0 ? e.ego_id : e.neighbor_ids[a - 1];
        const OriginalId gb = b == 0 ? e.ego_id : e.neighbor_ids[b - 1];
        got.emplace(std::min(ga, gb), std::max(ga, gb));
      }
      CHECK(got == expected);
    }
  }
}

TEST_CASE("write/reload round trip preserves the degree sequence") {
  const Graph g = testutil::random_graph(40, 0.15, 9);
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  const Graph h = load_graph(in).graph;
  REQUIRE(h.node_count() == g.node_count());
  CHECK(h.edge_count() == g.edge_count());
  std::multiset<std::uint32_t> dg, dh;
  for (NodeId v = 0; v < g.node_count(); ++v) dg.insert(g.degree(v));
  for (NodeId v = 0; v < h.node_count(); ++v) dh.insert(h.degree(v));
  CHECK(dg == dh);
}
