#pragma once

#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

struct DisjointPaths {
  int count = 0;
  // Each path runs from a vertex of x to a vertex of y; interiors avoid x and y.
  std::vector<std::vector<Vertex>> paths;
};

// Maximum number of pairwise edge-disjoint x–y paths (unit edge capacities,
// x and y contracted). Throws std::invalid_argument when x, y overlap, are
// empty, or are not connected subsets.
DisjointPaths max_edge_disjoint_paths(const Graph& g, const VertexSet& x, const VertexSet& y);

// Reusable augmenting-path engine for repeated queries on one graph. Skips
// precondition checks; callers guarantee x, y disjoint and nonempty.
class EdgeFlow {
 public:
  explicit EdgeFlow(const Graph& g);

  // min(limit, max flow); limit < 0 means unlimited.
  int count(const VertexSet& x, const VertexSet& y, int limit = -1);
  // Path decomposition of the flow left by the last count() call.
  std::vector<std::vector<Vertex>> paths(const VertexSet& x, const VertexSet& y) const;

 private:
  bool augment(const VertexSet& x, const VertexSet& y);

  const Graph* g_;
  std::vector<Edge> edges_;
  // adjacency entries (neighbor, edge id)
  std::vector<std::vector<std::pair<Vertex, int>>> adj_;
  // flow along edges_[e] from first to second: -1, 0, or 1
  std::vector<int> flow_;
  std::vector<int> parent_edge_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> queue_;
};

}  // namespace coarse
