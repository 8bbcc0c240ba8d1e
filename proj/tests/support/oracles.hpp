#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. Nothing here shares code with src/.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "coarse/graph.hpp"

namespace oracle {

using coarse::Edge;
using coarse::Graph;
using coarse::Vertex;

inline constexpr int kInf = 1 << 28;

// Floyd–Warshall over the edge list.
inline std::vector<std::vector<int>> all_pairs(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Classes of the transitive closure of "d <= m" restricted to s.
inline std::set<std::set<int>> m_components(const std::vector<std::vector<int>>& d, const std::vector<int>& s, int m) {
  const int n = static_cast<int>(s.size());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) reach[i][j] = (i == j) || d[s[i]][s[j]] <= m;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  std::set<std::set<int>> out;
  for (int i = 0; i < n; ++i) {
    std::set<int> c;
    for (int j = 0; j < n; ++j)
      if (reach[i][j]) c.insert(s[j]);
    out.insert(c);
  }
  return out;
}

// Is every x-y path cut by removing `removed` edges?
inline bool separated(const Graph& g, const std::vector<int>& x, const std::vector<int>& y,
                      const std::vector<Edge>& removed) {
  const int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<int> stack(x.begin(), x.end());
  for (int v : x) seen[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      Edge e{std::min(u, w), std::max(u, w)};
      if (std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (int v : y)
    if (seen[v]) return false;
  return true;
}

// Smallest number of edges whose removal separates x from y (by Menger this
// equals the maximum number of edge-disjoint x-y paths).
inline int min_edge_cut(const Graph& g, const std::vector<int>& x, const std::vector<int>& y) {
  auto edges = g.edges();
  const int m = static_cast<int>(edges.size());
  for (int size = 0; size <= m; ++size) {
    std::vector<int> pick(size);
    std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
      if (depth == size) {
        std::vector<Edge> removed;
        for (int i : pick) removed.push_back(edges[i]);
        return separated(g, x, y, removed);
      }
      for (int i = start; i < m; ++i) {
        pick[depth] = i;
        if (rec(i + 1, depth + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return size;
  }
  return m;
}

inline bool induced_connected(const Graph& g, const std::vector<int>& s) {
  if (s.empty()) return true;
  std::set<int> in(s.begin(), s.end());
  std::set<int> seen{s[0]};
  std::vector<int> stack{s[0]};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u))
      if (in.count(w) && !seen.count(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
  }
  return seen.size() == in.size();
}

}  // namespace oracle

namespace oracle {

struct SkeletonRef {
  std::set<std::set<int>> blocks;
  std::set<std::pair<std::set<int>, std::set<int>>> edges;  // ordered pair, first < second
};

// Direct reading of the definition: annuli by the ceiling formula, blocks as
// closure classes of "d <= k" inside each annulus.
inline SkeletonRef skeleton(const Graph& g, int lambda, int k) {
  auto d = all_pairs(g);
  const int root = *g.root();
  std::map<int, std::vector<int>> layers;
  for (int v = 0; v < g.vertex_count(); ++v) {
    int dist = d[root][v];
    int layer = -1;
    // smallest N with N*lambda < dist <= (N+1)*lambda
    if (dist > 0) {
      for (int N = 0;; ++N)
        if (N * lambda < dist && dist <= (N + 1) * lambda) {
          layer = N;
          break;
        }
    }
    layers[layer].push_back(v);
  }
  SkeletonRef ref;
  std::map<int, std::set<int>> block_of;
  for (auto& [layer, members] : layers) {
    for (const auto& c : m_components(d, members, k)) {
      ref.blocks.insert(c);
      for (int v : c) block_of[v] = c;
    }
  }
  for (auto [u, v] : g.edges()) {
    auto a = block_of[u], b = block_of[v];
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    ref.edges.insert({a, b});
  }
  return ref;
}

}  // namespace oracle

namespace oracle {

// All nonempty vertex subsets whose induced subgraph is connected, as sorted
// member lists (graphs up to ~16 vertices).
inline std::vector<std::vector<int>> connected_sets(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> out;
  for (long mask = 1; mask < (1L << n); ++mask) {
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(v);
    if (induced_connected(g, s)) out.push_back(s);
  }
  return out;
}

inline bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

inline bool edge_bottlenecked(const Graph& g, int n) {
  auto sets = connected_sets(g);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (disjoint(sets[i], sets[j]) && min_edge_cut(g, sets[i], sets[j]) > n) return false;
  return true;
}

inline int set_dist(const std::vector<std::vector<int>>& d, const std::vector<int>& a, const std::vector<int>& b) {
  int best = kInf;
  for (int x : a)
    for (int y : b) best = std::min(best, d[x][y]);
  return best;
}

// Does some S of min(n, available) vertices outside x ∪ y have open m-balls
// that, once x and y are spared, leave no x-y path?
inline bool fat_separable(const Graph& g, const std::vector<std::vector<int>>& d, int m, int n,
                          const std::vector<int>& x, const std::vector<int>& y) {
  const int nv = g.vertex_count();
  std::vector<int> outside;
  for (int v = 0; v < nv; ++v)
    if (std::find(x.begin(), x.end(), v) == x.end() && std::find(y.begin(), y.end(), v) == y.end())
      outside.push_back(v);
  const int size = std::min<int>(n, static_cast<int>(outside.size()));
  std::vector<int> pick;
  std::function<bool(int)> rec = [&](int start) -> bool {
    if (static_cast<int>(pick.size()) == size) {
      std::vector<char> removed(nv, 0);
      for (int v : outside)
        for (int s : pick)
          if (d[s][v] < m) removed[v] = 1;
      std::vector<char> seen(nv, 0);
      std::vector<int> stack(x.begin(), x.end());
      for (int v : x) seen[v] = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(u))
          if (!seen[w] && !removed[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      for (int v : y)
        if (seen[v]) return false;
      return true;
    }
    for (int i = start; i < static_cast<int>(outside.size()); ++i) {
      pick.push_back(outside[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

inline bool fat_bottlenecked(const Graph& g, int m, int n) {
  auto d = all_pairs(g);
  auto sets = connected_sets(g);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (set_dist(d, sets[i], sets[j]) > m && !fat_separable(g, d, m, n, sets[i], sets[j])) return false;
  return true;
}

}  // namespace oracle
