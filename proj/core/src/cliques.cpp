#include "cliquedist/cliques.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <span>
#include <unordered_map>

#include "cliquedist/error.hpp"

namespace cliquedist {

namespace {

using Words = std::vector<std::uint64_t>;

// Dense bitset adjacency over a small local universe (one egonet or one
// neighborhood). All set algebra in the enumeration runs on 64-bit words.
class BitGraph {
 public:
  explicit BitGraph(std::uint32_t n)
      : n_(n), words_(n == 0 ? 0 : (n + 63) / 64),
        bits_(static_cast<std::size_t>(n) * words_, 0) {}

  void add_edge(std::uint32_t a, std::uint32_t b) {
    set_bit(a, b);
    set_bit(b, a);
  }
  const std::uint64_t* row(std::uint32_t v) const {
    return bits_.data() + static_cast<std::size_t>(v) * words_;
  }
  std::uint32_t size() const { return n_; }
  std::uint32_t words() const { return words_; }

 private:
  void set_bit(std::uint32_t a, std::uint32_t b) {
    bits_[static_cast<std::size_t>(a) * words_ + b / 64] |= 1ULL << (b % 64);
  }
  std::uint32_t n_;
  std::uint32_t words_;
  Words bits_;
};

bool none_set(const Words& w) {
  for (const auto x : w)
    if (x) return false;
  return true;
}

std::uint32_t and_popcount(const Words& a, const std::uint64_t* b, std::uint32_t words) {
  std::uint32_t c = 0;
  for (std::uint32_t i = 0; i < words; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

template <typename Fn>
void for_each_bit(const Words& w, Fn&& fn) {
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    std::uint64_t x = w[i];
    while (x) {
      const std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(x));
      fn(i * 64 + b);
      x &= x - 1;
    }
  }
}

using EmitFn = std::function<void(std::span<const std::uint32_t>)>;

// Bron-Kerbosch with a greedy max-|P cap N(u)| pivot over P and X.
// Scratch sets are kept per depth so recursion does not allocate per call.
class BronKerbosch {
 public:
  BronKerbosch(const BitGraph& g, EmitFn emit)
      : g_(g), emit_(std::move(emit)), words_(g.words()) {}

  // P = whole universe, X = empty.
  void run_full() {
    Words p(words_, 0);
    for (std::uint32_t v = 0; v < g_.size(); ++v) p[v / 64] |= 1ULL << (v % 64);
    run(std::move(p), Words(words_, 0));
  }

  void run(Words p, Words x) {
    // Full preallocation: recursion never resizes these, so references into
    // the stacks stay valid across recursive calls.
    p_.assign(g_.size() + 2, Words(words_, 0));
    x_.assign(g_.size() + 2, Words(words_, 0));
    cand_.assign(g_.size() + 2, Words(words_, 0));
    p_[0] = std::move(p);
    x_[0] = std::move(x);
    clique_.clear();
    recurse(0);
  }

 private:
  void recurse(std::size_t depth) {
    Words& p = p_[depth];
    Words& x = x_[depth];
    if (none_set(p)) {
      if (none_set(x)) emit_(clique_);
      return;
    }

    // pivot
    std::uint32_t pivot = 0;
    std::int64_t best = -1;
    for (std::uint32_t i = 0; i < words_; ++i) {
      std::uint64_t both = p[i] | x[i];
      while (both) {
        const std::uint32_t v =
            i * 64 + static_cast<std::uint32_t>(std::countr_zero(both));
        both &= both - 1;
        const std::int64_t score = and_popcount(p, g_.row(v), words_);
        if (score > best) {
          best = score;
          pivot = v;
        }
      }
    }

    Words& cand = cand_[depth];
    const std::uint64_t* piv_row = g_.row(pivot);
    for (std::uint32_t i = 0; i < words_; ++i) cand[i] = p[i] & ~piv_row[i];

    for_each_bit(cand, [&](std::uint32_t v) {
      const std::uint64_t* vrow = g_.row(v);
      Words& p2 = p_[depth + 1];
      Words& x2 = x_[depth + 1];
      for (std::uint32_t i = 0; i < words_; ++i) {
        p2[i] = p_[depth][i] & vrow[i];
        x2[i] = x_[depth][i] & vrow[i];
      }
      clique_.push_back(v);
      recurse(depth + 1);
      clique_.pop_back();
      p_[depth][v / 64] &= ~(1ULL << (v % 64));
      x_[depth][v / 64] |= 1ULL << (v % 64);
    });
  }

  const BitGraph& g_;
  EmitFn emit_;
  std::uint32_t words_;
  std::vector<std::uint32_t> clique_;
  std::vector<Words> p_, x_, cand_;
};

// Every clique (not only maximal) of order <= cap that contains one implicit
// base member (the ego, or the census root vertex). Sets are extended in
// ascending local-index order so each clique comes out exactly once. The
// base member alone is emitted as the empty set.
class AllCliqueLister {
 public:
  AllCliqueLister(const BitGraph& g, std::uint32_t cap, std::uint32_t base_size,
                  EmitFn emit)
      : g_(g), cap_(cap), base_size_(base_size), emit_(std::move(emit)),
        words_(g.words()) {}

  void run_from(const Words& candidates) {
    clique_.clear();
    emit_(clique_);
    if (base_size_ < cap_) {
      const std::size_t max_depth =
          std::min<std::size_t>(g_.size(), cap_ - base_size_) + 1;
      scratch_.assign(max_depth, Words(words_, 0));
      recurse(candidates, 0);
    }
  }

 private:
  // zero out bits 0..v in place
  static void clear_upto(Words& w, std::uint32_t v) {
    const std::uint32_t word = v / 64;
    for (std::uint32_t i = 0; i < word; ++i) w[i] = 0;
    const std::uint32_t r = v % 64;
    if (r == 63) {
      w[word] = 0;
    } else {
      w[word] &= ~((1ULL << (r + 1)) - 1);
    }
  }

  void recurse(const Words& cand, std::size_t depth) {
    for_each_bit(cand, [&](std::uint32_t v) {
      clique_.push_back(v);
      emit_(clique_);
      if (clique_.size() + base_size_ < cap_) {
        Words& next = scratch_[depth];
        next.assign(words_, 0);
        const std::uint64_t* vrow = g_.row(v);
        for (std::uint32_t i = 0; i < words_; ++i) next[i] = cand[i] & vrow[i];
        clear_upto(next, v);
        recurse(next, depth + 1);
      }
      clique_.pop_back();
    });
  }

  const BitGraph& g_;
  std::uint32_t cap_;
  std::uint32_t base_size_;
  EmitFn emit_;
  std::uint32_t words_;
  std::vector<std::uint32_t> clique_;
  std::vector<Words> scratch_;
};

Composition tally_composition(std::span<const std::uint16_t> cats,
                              std::span<const std::uint32_t> locals,
                              std::uint16_t category_count,
                              std::optional<std::uint32_t> extra_member) {
  Composition u(category_count, 0);
  for (const auto m : locals) ++u[cats[m] - 1];
  if (extra_member) ++u[cats[*extra_member] - 1];
  return u;
}

}  // namespace

std::vector<CliqueRecord> enumerate_maximal_cliques(
    const std::vector<OriginalId>& members,
    const std::vector<std::pair<OriginalId, OriginalId>>& edges,
    std::optional<std::uint32_t> max_order) {
  std::vector<CliqueRecord> out;
  if (members.empty()) return out;

  std::unordered_map<OriginalId, std::uint32_t> local;
  local.reserve(members.size());
  for (std::uint32_t i = 0; i < members.size(); ++i) local.emplace(members[i], i);

  BitGraph g(static_cast<std::uint32_t>(members.size()));
  for (const auto& [a, b] : edges) {
    const auto ia = local.find(a);
    const auto ib = local.find(b);
    if (ia == local.end() || ib == local.end()) {
      throw UsageError("edge endpoint not in member set");
    }
    if (ia->second != ib->second) g.add_edge(ia->second, ib->second);
  }

  BronKerbosch bk(g, [&](std::span<const std::uint32_t> locals) {
    CliqueRecord rec;
    rec.order = static_cast<std::uint32_t>(locals.size());
    rec.members.reserve(locals.size());
    for (const auto l : locals) rec.members.push_back(members[l]);
    std::sort(rec.members.begin(), rec.members.end());
    if (max_order && rec.order > *max_order) {
      rec.oversized = true;
      rec.members.resize(*max_order);
    }
    out.push_back(std::move(rec));
  });
  bk.run_full();
  return out;
}

EgoCliqueProfile profile_ego(const Egonet& e, const ProfileOptions& opts) {
  if (opts.mode == EnumMode::all_up_to_order && !opts.max_order) {
    throw UsageError("all-clique mode requires a max_order cap");
  }

  EgoCliqueProfile profile;
  profile.ego_id = e.ego_id;
  profile.labeled = e.labeled;

  std::uint16_t category_count = 0;
  if (e.attributed()) {
    for (std::uint32_t m = 0; m < e.member_count(); ++m) {
      if (e.categories[m] == 0) {
        const OriginalId id = m == 0 ? e.ego_id : e.neighbor_ids[m - 1];
        throw Error("attribute missing for egonet member " + std::to_string(id) +
                    " (ego " + std::to_string(e.ego_id) + ")");
      }
      category_count = std::max(category_count, e.categories[m]);
    }
    profile.has_compositions = true;
  }

  const std::uint32_t k = static_cast<std::uint32_t>(e.neighbor_ids.size());
  // Universe: neighbors only, local 0..k-1 (egonet member index minus one).
  // A maximal clique through the ego is exactly the ego plus a maximal
  // clique of the neighbor-induced subgraph.
  BitGraph g(k);
  for (const auto& [a, b] : e.edges) {
    if (a >= 1 && b >= 1 && a != b) g.add_edge(a - 1, b - 1);
  }

  // categories indexed by neighbor-local id, ego handled as extra member 0
  std::vector<std::uint16_t> cats;
  if (profile.has_compositions) {
    cats.assign(e.categories.begin() + 1, e.categories.end());
  }

  auto handle = [&](std::span<const std::uint32_t> locals) {
    const std::uint32_t order = static_cast<std::uint32_t>(locals.size()) + 1;
    ++profile.degree_by_order[order];
    if (profile.has_compositions) {
      Composition u(category_count, 0);
      for (const auto l : locals) ++u[cats[l] - 1];
      ++u[e.categories[0] - 1];
      ++profile.degree_by_composition[u];
    }
    if (e.labeled) {
      CliqueRecord rec;
      rec.order = order;
      rec.members.reserve(order);
      rec.members.push_back(e.ego_id);
      for (const auto l : locals) rec.members.push_back(e.neighbor_ids[l]);
      std::sort(rec.members.begin(), rec.members.end());
      if (profile.has_compositions) {
        rec.composition = tally_composition(cats, locals, category_count, {});
        ++rec.composition[e.categories[0] - 1];
      }
      if (opts.max_order && rec.order > *opts.max_order) {
        rec.oversized = true;
        rec.members.resize(*opts.max_order);
      }
      profile.distinct_cliques.push_back(std::move(rec));
    }
  };

  if (opts.mode == EnumMode::maximal) {
    BronKerbosch bk(g, handle);
    bk.run_full();
  } else {
    AllCliqueLister lister(g, *opts.max_order, 1, handle);
    Words all(g.words(), 0);
    for (std::uint32_t v = 0; v < k; ++v) all[v / 64] |= 1ULL << (v % 64);
    lister.run_from(all);
  }
  return profile;
}

std::vector<NodeId> degeneracy_order(const Graph& g) {
  const std::uint32_t n = g.node_count();
  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // bucket queue with lazy deletion
  std::vector<std::vector<NodeId>> bins(max_deg + 1);
  for (NodeId v = 0; v < n; ++v) bins[deg[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::vector<NodeId> order;
  order.reserve(n);

  std::uint32_t dmin = 0;
  for (std::uint32_t taken = 0; taken < n; ++taken) {
    while (true) {
      while (dmin < bins.size() && bins[dmin].empty()) ++dmin;
      NodeId v = bins[dmin].back();
      if (removed[v] || deg[v] != dmin) {
        bins[dmin].pop_back();  // stale entry
        continue;
      }
      bins[dmin].pop_back();
      removed[v] = true;
      order.push_back(v);
      for (const NodeId w : g.neighbors(v)) {
        if (!removed[w]) {
          --deg[w];
          bins[deg[w]].push_back(w);
        }
      }
      dmin = dmin == 0 ? 0 : dmin - 1;
      break;
    }
  }
  return order;
}

CensusResult census(const Graph& g, const CensusOptions& opts) {
  if (opts.mode == EnumMode::all_up_to_order && !opts.max_order) {
    throw UsageError("all-clique mode requires a max_order cap");
  }
  const Executor& exec = opts.executor ? *opts.executor : Executor::serial();
  const std::uint32_t n = g.node_count();

  const std::vector<NodeId> order = degeneracy_order(g);
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t i = 0; i < n; ++i) rank[order[i]] = i;

  CensusResult total;
  std::mutex merge_mutex;
  std::atomic<std::int64_t> budget_left{static_cast<std::int64_t>(opts.budget)};
  std::atomic<std::uint32_t> vertices_done{0};
  const bool attributed = g.attributed();
  const std::uint16_t p = g.category_count();

  exec.parallel_for(n, [&](std::size_t idx) {
    const NodeId v = order[idx];
    if (attributed && g.category_of(v) == 0) {
      throw Error("attribute missing for node " + std::to_string(g.original_id(v)));
    }
    const auto nbrs = g.neighbors(v);
    const std::uint32_t k = static_cast<std::uint32_t>(nbrs.size());

    BitGraph local(k);
    // adjacency among the neighborhood by sorted-merge intersection
    for (std::uint32_t t = 0; t < k; ++t) {
      const auto adj = g.neighbors(nbrs[t]);
      std::size_t a = 0, b = 0;
      while (a < adj.size() && b < nbrs.size()) {
        if (adj[a] < nbrs[b]) {
          ++a;
        } else if (adj[a] > nbrs[b]) {
          ++b;
        } else {
          if (t < b) local.add_edge(t, static_cast<std::uint32_t>(b));
          ++a;
          ++b;
        }
      }
    }

    CliqueDistribution local_by_order;
    CompositionDistribution local_by_comp;
    std::uint64_t local_count = 0;

    auto handle = [&](std::span<const std::uint32_t> locals) {
      if (budget_left.fetch_sub(1, std::memory_order_relaxed) <= 0) {
        throw BudgetExceededError(
            "census budget of " + std::to_string(opts.budget) + " cliques exceeded",
            "processed ~" + std::to_string(vertices_done.load()) + " of " +
                std::to_string(n) + " vertices before aborting");
      }
      const std::uint32_t clique_order = static_cast<std::uint32_t>(locals.size()) + 1;
      ++local_by_order[clique_order];
      ++local_count;
      if (attributed) {
        Composition u(p, 0);
        ++u[g.category_of(v) - 1];
        for (const auto l : locals) ++u[g.category_of(nbrs[l]) - 1];
        ++local_by_comp[u];
      }
    };

    if (opts.mode == EnumMode::maximal) {
      // Later neighbors (degeneracy order) are candidates, earlier ones go
      // to X: every maximal clique is emitted at its earliest member.
      Words pset(local.words(), 0);
      Words xset(local.words(), 0);
      for (std::uint32_t t = 0; t < k; ++t) {
        if (rank[nbrs[t]] > rank[v]) {
          pset[t / 64] |= 1ULL << (t % 64);
        } else {
          xset[t / 64] |= 1ULL << (t % 64);
        }
      }
      BronKerbosch bk(local, handle);
      bk.run(std::move(pset), std::move(xset));
    } else {
      // all cliques whose minimum-rank member is v
      AllCliqueLister lister(local, *opts.max_order, 1, handle);
      Words cands(local.words(), 0);
      for (std::uint32_t t = 0; t < k; ++t) {
        if (rank[nbrs[t]] > rank[v]) cands[t / 64] |= 1ULL << (t % 64);
      }
      lister.run_from(cands);
    }

    vertices_done.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (const auto& [o, c] : local_by_order) total.by_order[o] += c;
    for (const auto& [u, c] : local_by_comp) total.by_composition[u] += c;
    total.total_cliques += local_count;
  });

  for (const auto& [o, c] : total.by_order) {
    (void)c;
    total.max_order = std::max(total.max_order, o);
  }
  return total;
}

}  // namespace cliquedist
