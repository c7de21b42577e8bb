#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace cliquedist {

// Dense node index inside a loaded Graph (0..N-1).
using NodeId = std::uint32_t;
// Node identifier in the external input space (edge lists, egonet files).
using OriginalId = std::uint64_t;

// Attribute composition vector: entry j-1 counts members in category j (1..p).
using Composition = std::vector<std::uint32_t>;

// Sparse clique distributions, order -> count and composition -> count.
using CliqueDistribution = std::map<std::uint32_t, std::uint64_t>;
using CompositionDistribution = std::map<Composition, std::uint64_t>;

inline std::uint32_t composition_order(const Composition& u) {
  std::uint32_t s = 0;
  for (auto c : u) s += c;
  return s;
}

// Serialized as "u1|u2|...|up".
inline std::string composition_key(const Composition& u) {
  std::string out;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j) out.push_back('|');
    out += std::to_string(u[j]);
  }
  return out;
}

inline Composition parse_composition(const std::string& key) {
  Composition u;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '|')) {
    u.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  return u;
}

struct CensusResult {
  CliqueDistribution by_order;
  CompositionDistribution by_composition;  // empty when the graph is unattributed
  std::uint64_t total_cliques = 0;
  std::uint32_t max_order = 0;
};

}  // namespace cliquedist
