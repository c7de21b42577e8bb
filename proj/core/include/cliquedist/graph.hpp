#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cliquedist/types.hpp"

namespace cliquedist {

// Immutable undirected simple graph with optional categorical node
// attributes. Node ids are densified to 0..N-1 on load; the original ids are
// retained. Adjacency is CSR with sorted neighbor lists, which is what the
// clique enumeration relies on for linear-merge intersection.
class Graph {
 public:
  Graph() = default;

  // Direct construction (tests, generators). Edges may contain duplicates,
  // self loops and both orientations; they are cleaned exactly like file
  // input. Ids are used verbatim as original ids.
  static Graph from_edges(const std::vector<std::pair<OriginalId, OriginalId>>& edges);

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(offsets_.size() - 1); }
  std::uint64_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(NodeId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(NodeId a, NodeId b) const;

  bool attributed() const { return category_count_ > 0; }
  std::uint16_t category_count() const { return category_count_; }
  // 1..p, or 0 when the node carries no attribute.
  std::uint16_t category_of(NodeId v) const {
    return categories_.empty() ? 0 : categories_[v];
  }
  const std::vector<std::string>& category_names() const { return category_names_; }

  OriginalId original_id(NodeId v) const { return original_ids_[v]; }
  std::optional<NodeId> dense_id(OriginalId id) const;

 private:
  friend class GraphBuilder;
  std::vector<std::uint64_t> offsets_;  // size N+1
  std::vector<NodeId> adjacency_;       // sorted within each node's range
  std::vector<std::uint16_t> categories_;
  std::uint16_t category_count_ = 0;
  std::vector<std::string> category_names_;
  std::vector<OriginalId> original_ids_;
  std::unordered_map<OriginalId, NodeId> id_map_;
};

struct LoadStats {
  std::uint64_t duplicate_edges_dropped = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t comment_lines = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadStats stats;
};

// Edge list: whitespace-separated integer pairs, one edge per line, lines
// starting with '#' ignored (SNAP convention). Directed input is
// symmetrized; duplicates and self loops are dropped and counted.
LoadedGraph load_graph(std::istream& edge_source);

// Attribute file: CSV with header "node_id,attribute". Values are arbitrary
// strings, mapped to categories 1..p in first-appearance order.
LoadedGraph load_graph(std::istream& edge_source, std::istream& attribute_source);

LoadedGraph load_graph_file(const std::string& edge_path,
                            const std::optional<std::string>& attribute_path = {});

// One "u v" line per edge with original ids, u < v by dense order.
void write_edge_list(const Graph& g, std::ostream& out);

// One sampled observation. Members are indexed locally: 0 is the ego,
// 1..k the neighbors in neighbor_ids order. When labeled, neighbor_ids are
// real node ids comparable across egonets; when unlabeled they are just
// 1..k and carry no cross-egonet meaning.
struct Egonet {
  OriginalId ego_id = 0;
  bool labeled = true;
  std::vector<OriginalId> neighbor_ids;
  // Local index pairs (a < b), 0 = ego. Includes the ego-neighbor edges.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  // Category per local index (1..p, 0 = missing). Empty when unattributed.
  std::vector<std::uint16_t> categories;

  std::uint32_t member_count() const {
    return static_cast<std::uint32_t>(neighbor_ids.size()) + 1;
  }
  bool attributed() const { return !categories.empty(); }
};

// Subgraph induced by ego and its neighborhood. `ego` is a dense id.
Egonet extract_egonet(const Graph& g, NodeId ego, bool labeled = true);

}  // namespace cliquedist
