#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask bit(int v) { return Mask{1} << v; }
std::vector<Vertex> mask_members(Mask m);
Mask to_mask(const VertexSet& s);
VertexSet from_mask(int universe, Mask m);

// Bitmask view of a graph with at most 64 vertices.
struct MaskGraph {
  int n = 0;
  std::vector<Mask> adj;
  // closed_ball[r][v]: vertices within distance r of v, r in [0, radius].
  std::vector<std::vector<Mask>> closed_ball;

  explicit MaskGraph(const Graph& g, int radius = 0);
  Mask closed_ball_of(Mask s, int r) const;  // r <= radius
  // Vertices of `allowed` reachable from `from & allowed` inside `allowed`.
  Mask reach(Mask from, Mask allowed) const;
  bool connected(Mask s) const;
  Mask neighbors_of(Mask s) const;
};

// Every nonempty connected vertex subset, sorted by (size, mask). Returns
// nullopt as soon as more than `limit` subsets exist. Requires n <= 64.
std::optional<std::vector<Mask>> connected_subsets(const MaskGraph& g, std::size_t limit);

// Vertices of s whose removal leaves s connected (s itself connected).
int noncut_count(const MaskGraph& g, Mask s);

// Connected subsets with at most max_noncut non-cut vertices, sorted by
// (size, mask); nullopt once more than `limit` exist.
std::optional<std::vector<Mask>> few_noncut_subsets(const MaskGraph& g, int max_noncut, std::size_t limit);

}  // namespace coarse
