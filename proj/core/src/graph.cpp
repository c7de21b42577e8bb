#include "cliquedist/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cliquedist/error.hpp"

namespace cliquedist {

namespace {
struct EdgeAccumulator {
  std::vector<std::pair<OriginalId, OriginalId>> edges;
  LoadStats stats;
};
}  // namespace

// Friend of Graph; the only place its internals are assembled or mutated.
class GraphBuilder {
 public:
  // Densify ids in first-appearance order, symmetrize, dedup, build CSR.
  static Graph build_from_raw(EdgeAccumulator& acc, LoadStats* stats_out) {
    Graph g;
    std::vector<OriginalId> originals;
    std::unordered_map<OriginalId, NodeId> id_map;
    auto intern = [&](OriginalId id) -> NodeId {
      auto it = id_map.find(id);
      if (it != id_map.end()) return it->second;
      const NodeId dense = static_cast<NodeId>(originals.size());
      originals.push_back(id);
      id_map.emplace(id, dense);
      return dense;
    };

    std::vector<std::pair<NodeId, NodeId>> dense_edges;
    dense_edges.reserve(acc.edges.size());
    for (const auto& [a, b] : acc.edges) {
      const NodeId u = intern(a);
      if (a == b) {
        ++acc.stats.self_loops_dropped;  // node kept, loop dropped
        continue;
      }
      const NodeId v = intern(b);
      dense_edges.emplace_back(std::min(u, v), std::max(u, v));
    }

    std::sort(dense_edges.begin(), dense_edges.end());
    const auto unique_end = std::unique(dense_edges.begin(), dense_edges.end());
    acc.stats.duplicate_edges_dropped +=
        static_cast<std::uint64_t>(dense_edges.end() - unique_end);
    dense_edges.erase(unique_end, dense_edges.end());

    const std::uint32_t n = static_cast<std::uint32_t>(originals.size());
    std::vector<std::uint64_t> deg(n, 0);
    for (const auto& [u, v] : dense_edges) {
      ++deg[u];
      ++deg[v];
    }
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + deg[v];
    std::vector<NodeId> adjacency(offsets[n]);
    std::vector<std::uint64_t> cursor = offsets;
    for (const auto& [u, v] : dense_edges) {
      adjacency[cursor[u]++] = v;
      adjacency[cursor[v]++] = u;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
    }

    g.offsets_ = std::move(offsets);
    g.adjacency_ = std::move(adjacency);
    g.original_ids_ = std::move(originals);
    g.id_map_ = std::move(id_map);
    if (stats_out) *stats_out = acc.stats;
    return g;
  }

  static void set_attributes(Graph& g, std::vector<std::uint16_t> categories,
                             std::vector<std::string> names) {
    g.categories_ = std::move(categories);
    g.category_count_ = static_cast<std::uint16_t>(names.size());
    g.category_names_ = std::move(names);
  }
};

namespace {

EdgeAccumulator parse_edge_stream(std::istream& in) {
  EdgeAccumulator acc;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      ++acc.stats.comment_lines;
      continue;
    }
    std::istringstream ls(line);
    long long a = 0, b = 0;
    if (!(ls >> a >> b) || a < 0 || b < 0) {
      throw ParseError("malformed edge line: '" + line + "'", line_no);
    }
    acc.edges.emplace_back(static_cast<OriginalId>(a), static_cast<OriginalId>(b));
  }
  return acc;
}

// trims spaces and an optional surrounding quote pair
std::string trim_field(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::string t = s.substr(a, b - a + 1);
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
  return t;
}

void apply_attributes(Graph& g, std::istream& attrs) {
  std::string line;
  std::uint64_t line_no = 0;
  bool header_seen = false;
  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint16_t> name_to_cat;
  std::vector<std::uint16_t> categories(g.node_count(), 0);

  while (std::getline(attrs, line)) {
    ++line_no;
    const std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("attribute line is not 'node_id,attribute'", line_no);
    }
    const std::string left = trim_field(line.substr(0, comma));
    const std::string right = trim_field(line.substr(comma + 1));
    if (!header_seen) {
      header_seen = true;
      if (left == "node_id") continue;  // header row
      // fall through: headerless files are accepted
    }
    OriginalId id = 0;
    try {
      id = static_cast<OriginalId>(std::stoull(left));
    } catch (const std::exception&) {
      throw ParseError("bad node id '" + left + "' in attribute file", line_no);
    }
    const auto dense = g.dense_id(id);
    if (!dense) {
      throw ParseError("attribute for unknown node " + left, line_no);
    }
    auto it = name_to_cat.find(right);
    std::uint16_t cat;
    if (it == name_to_cat.end()) {
      names.push_back(right);
      cat = static_cast<std::uint16_t>(names.size());  // 1..p in first-appearance order
      name_to_cat.emplace(right, cat);
    } else {
      cat = it->second;
    }
    categories[*dense] = cat;
  }

  GraphBuilder::set_attributes(g, std::move(categories), std::move(names));
}

}  // namespace

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a == b) return false;
  // probe the shorter list
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<NodeId> Graph::dense_id(OriginalId id) const {
  const auto it = id_map_.find(id);
  if (it == id_map_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::from_edges(const std::vector<std::pair<OriginalId, OriginalId>>& edges) {
  EdgeAccumulator acc;
  acc.edges = edges;
  return GraphBuilder::build_from_raw(acc, nullptr);
}

LoadedGraph load_graph(std::istream& edge_source) {
  EdgeAccumulator acc = parse_edge_stream(edge_source);
  LoadedGraph out;
  out.graph = GraphBuilder::build_from_raw(acc, &out.stats);
  return out;
}

LoadedGraph load_graph(std::istream& edge_source, std::istream& attribute_source) {
  LoadedGraph out = load_graph(edge_source);
  apply_attributes(out.graph, attribute_source);
  return out;
}

LoadedGraph load_graph_file(const std::string& edge_path,
                            const std::optional<std::string>& attribute_path) {
  std::ifstream edges(edge_path);
  if (!edges) throw IoError("cannot open edge list: " + edge_path);
  if (!attribute_path) return load_graph(edges);
  std::ifstream attrs(*attribute_path);
  if (!attrs) throw IoError("cannot open attribute file: " + *attribute_path);
  return load_graph(edges, attrs);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const NodeId w : g.neighbors(v)) {
      if (v < w) out << g.original_id(v) << ' ' << g.original_id(w) << '\n';
    }
  }
}

Egonet extract_egonet(const Graph& g, NodeId ego, bool labeled) {
  if (ego >= g.node_count()) {
    throw UsageError("ego " + std::to_string(ego) + " out of range (N=" +
                     std::to_string(g.node_count()) + ")");
  }
  Egonet e;
  e.labeled = labeled;
  e.ego_id = g.original_id(ego);

  const auto nbrs = g.neighbors(ego);
  const std::uint32_t k = static_cast<std::uint32_t>(nbrs.size());
  e.neighbor_ids.resize(k);
  for (std::uint32_t t = 0; t < k; ++t) {
    e.neighbor_ids[t] = labeled ? g.original_id(nbrs[t]) : static_cast<OriginalId>(t + 1);
  }

  // ego-neighbor edges
  for (std::uint32_t t = 0; t < k; ++t) e.edges.emplace_back(0u, t + 1);
  // neighbor-neighbor edges: intersect each neighbor's sorted list with nbrs
  for (std::uint32_t t = 0; t < k; ++t) {
    const auto adj = g.neighbors(nbrs[t]);
    std::size_t a = 0, b = 0;
    while (a < adj.size() && b < nbrs.size()) {
      if (adj[a] < nbrs[b]) {
        ++a;
      } else if (adj[a] > nbrs[b]) {
        ++b;
      } else {
        if (t < b) e.edges.emplace_back(t + 1, static_cast<std::uint32_t>(b) + 1);
        ++a;
        ++b;
      }
    }
  }

  if (g.attributed()) {
    e.categories.resize(k + 1);
    e.categories[0] = g.category_of(ego);
    for (std::uint32_t t = 0; t < k; ++t) e.categories[t + 1] = g.category_of(nbrs[t]);
  }
  return e;
}

}  // namespace cliquedist
