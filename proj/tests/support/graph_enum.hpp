#pragma once

// Enumeration of connected graphs up to isomorphism for up to 10 vertices,
// plus a contraction-based minor test that shares nothing with the library's
// branch-set search.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coarse/graph.hpp"

namespace oracle {

// Adjacency bitmasks; vertex i's neighbours are the set bits of adj[i].
struct SmallGraph {
  int n = 0;
  std::vector<std::uint16_t> adj;

  bool has(int u, int v) const { return (adj[u] >> v) & 1; }
  int edge_count() const {
    int c = 0;
    for (int i = 0; i < n; ++i) c += __builtin_popcount(adj[i]);
    return c / 2;
  }
  coarse::Graph to_graph() const {
    std::vector<coarse::Edge> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (has(u, v)) e.emplace_back(u, v);
    return coarse::Graph::from_edges(n, e, 0);
  }
};

// Upper-triangle bit string of g under the vertex order `order`.
inline std::uint64_t code_under(const SmallGraph& g, const std::vector<int>& order) {
  std::uint64_t c = 0;
  int bit = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j, ++bit)
      if (g.has(order[i], order[j])) c |= std::uint64_t{1} << bit;
  return c;
}

inline SmallGraph decode(int n, std::uint64_t code) {
  SmallGraph g{n, std::vector<std::uint16_t>(n, 0)};
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if ((code >> bit) & 1) {
        g.adj[i] |= std::uint16_t(1u << j);
        g.adj[j] |= std::uint16_t(1u << i);
      }
  return g;
}

namespace detail {

using Cells = std::vector<std::vector<int>>;

// Splits cells by neighbour counts into every cell until stable.
inline void refine(const SmallGraph& g, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint16_t> masks;
    for (const auto& c : cells) {
      std::uint16_t m = 0;
      for (int v : c) m |= std::uint16_t(1u << v);
      masks.push_back(m);
    }
    Cells next;
    for (const auto& c : cells) {
      if (c.size() == 1) {
        next.push_back(c);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      for (int v : c) {
        std::vector<int> s;
        for (auto m : masks) s.push_back(__builtin_popcount(g.adj[v] & m));
        sig.emplace_back(std::move(s), v);
      }
      std::sort(sig.begin(), sig.end());
      std::size_t i = 0;
      while (i < sig.size()) {
        std::vector<int> part;
        std::size_t j = i;
        while (j < sig.size() && sig[j].first == sig[i].first) part.push_back(sig[j++].second);
        next.push_back(part);
        i = j;
      }
      if (sig.front().first != sig.back().first) changed = true;
    }
    cells = std::move(next);
  }
}

inline bool twins(const SmallGraph& g, int u, int v) {
  const std::uint16_t mu = g.adj[u] & std::uint16_t(~(1u << v));
  const std::uint16_t mv = g.adj[v] & std::uint16_t(~(1u << u));
  return mu == mv;
}

inline void search(const SmallGraph& g, Cells cells, std::uint64_t& best, bool& have) {
  refine(g, cells);
  std::size_t target = cells.size();
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].size() > 1) {
      target = i;
      break;
    }
  if (target == cells.size()) {
    std::vector<int> order;
    for (const auto& c : cells) order.push_back(c[0]);
    const auto c = code_under(g, order);
    if (!have || c > best) best = c;
    have = true;
    return;
  }
  std::vector<int> tried;
  for (int v : cells[target]) {
    // Swapping twins in one cell is an automorphism of the ordered
    // partition, so their subtrees give the same certificates.
    if (std::any_of(tried.begin(), tried.end(), [&](int u) { return twins(g, u, v); })) continue;
    tried.push_back(v);
    Cells next;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != target) {
        next.push_back(cells[i]);
        continue;
      }
      next.push_back({v});
      std::vector<int> rest;
      for (int w : cells[i])
        if (w != v) rest.push_back(w);
      next.push_back(rest);
    }
    search(g, std::move(next), best, have);
  }
}

}  // namespace detail

// Maximal certificate over all orderings that survive refinement: equal for
// isomorphic graphs, and it decodes to a graph isomorphic to g.
inline std::uint64_t canonical_code(const SmallGraph& g) {
  detail::Cells cells(1);
  for (int v = 0; v < g.n; ++v) cells[0].push_back(v);
  std::uint64_t best = 0;
  bool have = false;
  detail::search(g, std::move(cells), best, have);
  return best;
}

// by_size[n] lists canonical codes of all connected graphs on n vertices,
// n = 1..max_n, sorted. Every connected graph has a vertex whose deletion
// leaves it connected, so extending each graph on n-1 vertices by a vertex
// with every nonempty neighbourhood reaches all of them.
inline std::vector<std::vector<std::uint64_t>> connected_graphs(int max_n) {
  std::vector<std::vector<std::uint64_t>> by_size(static_cast<std::size_t>(max_n) + 1);
  if (max_n >= 1) by_size[1] = {0};
  for (int n = 2; n <= max_n; ++n) {
    std::unordered_set<std::uint64_t> seen;
    for (auto code : by_size[static_cast<std::size_t>(n) - 1]) {
      const SmallGraph base = decode(n - 1, code);
      for (std::uint32_t nb = 1; nb < (1u << (n - 1)); ++nb) {
        SmallGraph g{n, base.adj};
        g.adj.push_back(static_cast<std::uint16_t>(nb));
        for (int v = 0; v < n - 1; ++v)
          if ((nb >> v) & 1) g.adj[v] |= std::uint16_t(1u << (n - 1));
        seen.insert(canonical_code(g));
      }
    }
    by_size[static_cast<std::size_t>(n)].assign(seen.begin(), seen.end());
    std::sort(by_size[static_cast<std::size_t>(n)].begin(), by_size[static_cast<std::size_t>(n)].end());
  }
  return by_size;
}

inline SmallGraph contract(const SmallGraph& g, int u, int v) {
  // Merge v into u, then drop v and shift later vertices down.
  SmallGraph h{g.n - 1, {}};
  auto map = [&](int w) { return w < v ? w : w - 1; };
  std::vector<std::uint16_t> adj(g.n - 1, 0);
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      if (!g.has(a, b)) continue;
      int x = a == v ? u : a, y = b == v ? u : b;
      if (x == y) continue;
      x = map(x);
      y = map(y);
      adj[x] |= std::uint16_t(1u << y);
      adj[y] |= std::uint16_t(1u << x);
    }
  }
  h.adj = std::move(adj);
  return h;
}

// Whether simple pattern h (on at most g.n vertices) is a subgraph of g,
// by trying every injective vertex map.
inline bool contains_subgraph(const SmallGraph& g, const SmallGraph& h) {
  if (h.n > g.n || h.edge_count() > g.edge_count()) return false;
  std::vector<int> img(h.n, -1);
  std::uint16_t used = 0;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == h.n) return true;
    for (int x = 0; x < g.n; ++x) {
      if ((used >> x) & 1) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (h.has(i, j) && !g.has(x, img[j])) ok = false;
      if (!ok) continue;
      img[i] = x;
      used |= std::uint16_t(1u << x);
      if (self(self, i + 1)) return true;
      used &= std::uint16_t(~(1u << x));
    }
    return false;
  };
  return rec(rec, 0);
}

// h is a minor of g iff h is a subgraph of some contraction of g. Memoised
// over canonical forms, so a whole enumeration shares the table.
class ContractionMinorOracle {
 public:
  explicit ContractionMinorOracle(SmallGraph h) : h_(std::move(h)) {}

  bool has_minor(const SmallGraph& g) {
    if (g.n < h_.n) return false;
    const auto key = (static_cast<std::uint64_t>(g.n) << 56) ^ canonical_code(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool found = contains_subgraph(g, h_);
    for (int u = 0; u < g.n && !found; ++u)
      for (int v = u + 1; v < g.n && !found; ++v)
        if (g.has(u, v)) found = has_minor(contract(g, u, v));
    memo_.emplace(key, found);
    return found;
  }

 private:
  SmallGraph h_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

inline SmallGraph small_from_edges(int n, const std::vector<coarse::Edge>& edges) {
  SmallGraph g{n, std::vector<std::uint16_t>(n, 0)};
  for (auto [u, v] : edges) {
    g.adj[u] |= std::uint16_t(1u << v);
    g.adj[v] |= std::uint16_t(1u << u);
  }
  return g;
}

}  // namespace oracle
