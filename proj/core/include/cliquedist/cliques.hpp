#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cliquedist/executor.hpp"
#include "cliquedist/graph.hpp"
#include "cliquedist/types.hpp"

namespace cliquedist {

// maximal: Bron-Kerbosch with pivoting, exact maximal cliques.
// all_up_to_order: every complete subgraph of order <= max_order, maximal or
// not. Requires max_order. The same definition must then be used throughout
// a run (census, profiles, estimates).
enum class EnumMode { maximal, all_up_to_order };

struct CliqueRecord {
  std::vector<OriginalId> members;  // sorted ascending
  std::uint32_t order = 0;          // true order; == members.size() unless oversized
  Composition composition;          // empty when unattributed
  bool oversized = false;           // order exceeded the max_order cap; members truncated
};

// Per-ego clique degrees. degree_by_order[i] = d_i(H_j), the number of
// cliques of order i that contain the ego.
struct EgoCliqueProfile {
  OriginalId ego_id = 0;
  bool labeled = false;
  bool has_compositions = false;
  std::map<std::uint32_t, std::uint64_t> degree_by_order;
  std::map<Composition, std::uint64_t> degree_by_composition;
  std::vector<CliqueRecord> distinct_cliques;  // populated only when labeled

  std::uint64_t degree(std::uint32_t order) const {
    const auto it = degree_by_order.find(order);
    return it == degree_by_order.end() ? 0 : it->second;
  }
  std::uint64_t degree(const Composition& u) const {
    const auto it = degree_by_composition.find(u);
    return it == degree_by_composition.end() ? 0 : it->second;
  }
};

// Maximal cliques of the simple graph given by `members` and `edges`, each
// exactly once. With max_order set, larger cliques are still found but come
// back truncated to max_order members and flagged oversized.
std::vector<CliqueRecord> enumerate_maximal_cliques(
    const std::vector<OriginalId>& members,
    const std::vector<std::pair<OriginalId, OriginalId>>& edges,
    std::optional<std::uint32_t> max_order = {});

struct ProfileOptions {
  EnumMode mode = EnumMode::maximal;
  std::optional<std::uint32_t> max_order;
};

// Clique degrees of the ego within its egonet (which contains all of the
// ego's cliques). Compositions are tallied when the egonet carries
// attributes; a member with a missing attribute is an error.
EgoCliqueProfile profile_ego(const Egonet& e, const ProfileOptions& opts = {});

struct CensusOptions {
  EnumMode mode = EnumMode::maximal;
  std::optional<std::uint32_t> max_order;
  std::uint64_t budget = 50'000'000;  // abort past this many cliques
  const Executor* executor = nullptr;
};

// Exact whole-graph clique distribution (and composition distribution when
// attributed). Degeneracy-ordered per-vertex decomposition; each vertex's
// subproblem is independent, so this parallelizes over the executor.
CensusResult census(const Graph& g, const CensusOptions& opts = {});

// Degeneracy ordering (repeatedly remove a minimum-degree vertex).
// Returned vector maps position -> dense node id.
std::vector<NodeId> degeneracy_order(const Graph& g);

}  // namespace cliquedist
