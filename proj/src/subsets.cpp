#include "coarse/subsets.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "coarse/metric.hpp"

namespace coarse {

std::vector<Vertex> mask_members(Mask m) {
  std::vector<Vertex> out;
  while (m) {
    out.push_back(__builtin_ctzll(m));
    m &= m - 1;
  }
  return out;
}

Mask to_mask(const VertexSet& s) {
  if (s.universe() > 64) throw std::invalid_argument("mask view needs at most 64 vertices");
  Mask m = 0;
  s.for_each([&](Vertex v) { m |= bit(v); });
  return m;
}

VertexSet from_mask(int universe, Mask m) {
  VertexSet s(universe);
  for (Vertex v : mask_members(m)) s.insert(v);
  return s;
}

MaskGraph::MaskGraph(const Graph& g, int radius) : n(g.vertex_count()), adj(static_cast<std::size_t>(n), 0) {
  if (n > 64) throw std::invalid_argument("mask view needs at most 64 vertices");
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= bit(w);
  }
  closed_ball.assign(static_cast<std::size_t>(radius) + 1, std::vector<Mask>(static_cast<std::size_t>(n), 0));
  for (Vertex v = 0; v < n; ++v) closed_ball[0][static_cast<std::size_t>(v)] = bit(v);
  for (int r = 1; r <= radius; ++r) {
    for (Vertex v = 0; v < n; ++v) {
      closed_ball[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)] =
          closed_ball[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(v)] |
          neighbors_of(closed_ball[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(v)]);
    }
  }
}

Mask MaskGraph::neighbors_of(Mask s) const {
  Mask out = 0;
  while (s) {
    out |= adj[static_cast<std::size_t>(__builtin_ctzll(s))];
    s &= s - 1;
  }
  return out;
}

Mask MaskGraph::closed_ball_of(Mask s, int r) const {
  if (r < 0) return 0;
  if (r >= static_cast<int>(closed_ball.size())) throw std::out_of_range("ball radius beyond precomputed range");
  Mask out = 0;
  const auto& row = closed_ball[static_cast<std::size_t>(r)];
  while (s) {
    out |= row[static_cast<std::size_t>(__builtin_ctzll(s))];
    s &= s - 1;
  }
  return out;
}

Mask MaskGraph::reach(Mask from, Mask allowed) const {
  Mask seen = from & allowed;
  Mask frontier = seen;
  while (frontier) {
    const Mask next = neighbors_of(frontier) & allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool MaskGraph::connected(Mask s) const {
  if (!s) return true;
  return reach(s & (~s + 1), s) == s;
}

std::optional<std::vector<Mask>> connected_subsets(const MaskGraph& g, std::size_t limit) {
  std::vector<Mask> out;
  bool overflow = false;
  // Sets with minimum vertex v: grow from v using only vertices > v. Each
  // set arises once: branch on the lowest extension vertex, in or out.
  auto rec = [&](auto&& self, Mask set, Mask ext, Mask banned) -> void {
    if (overflow) return;
    if (!ext) {
      out.push_back(set);
      if (out.size() > limit) overflow = true;
      return;
    }
    const int u = __builtin_ctzll(ext);
    const Mask rest = ext & ~bit(u);
    // include u
    self(self, set | bit(u), (rest | g.adj[static_cast<std::size_t>(u)]) & ~(set | bit(u)) & ~banned, banned);
    // exclude u
    self(self, set, rest, banned | bit(u));
  };
  for (int v = 0; v < g.n && !overflow; ++v) {
    const Mask low = (bit(v) << 1) - 1;  // vertices <= v
    rec(rec, bit(v), g.adj[static_cast<std::size_t>(v)] & ~low, low);
  }
  if (overflow) return std::nullopt;
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    const int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

int noncut_count(const MaskGraph& g, Mask s) {
  if (popcount(s) <= 1) return popcount(s);
  int count = 0;
  for (Vertex v : mask_members(s)) count += g.connected(s & ~bit(v)) ? 1 : 0;
  return count;
}

std::optional<std::vector<Mask>> few_noncut_subsets(const MaskGraph& g, int max_noncut, std::size_t limit) {
  // Removing a non-cut vertex never raises the count, so every member grows
  // from a singleton through members.
  std::unordered_set<Mask> seen;
  std::vector<Mask> out;
  for (int v = 0; v < g.n; ++v) {
    seen.insert(bit(v));
    out.push_back(bit(v));
  }
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Mask s = out[head];
    for (Vertex v : mask_members(g.neighbors_of(s) & ~s)) {
      const Mask t = s | bit(v);
      if (seen.count(t) || noncut_count(g, t) > max_noncut) continue;
      seen.insert(t);
      out.push_back(t);
      if (out.size() > limit) return std::nullopt;
    }
  }
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    const int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

}  // namespace coarse
