#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/graph.hpp"
#include "coarse/report.hpp"

namespace coarse {

enum class EdgeStrategy { exhaustive, vertex_pairs, sampled };
enum class FatStrategy { exhaustive, sampled };

EdgeStrategy parse_edge_strategy(const std::string& s);
FatStrategy parse_fat_strategy(const std::string& s);

struct BottleneckOptions {
  std::uint64_t seed = 0;
  // Exhaustive enumeration runs when the graph has at most `vertex_limit`
  // vertices or at most `subset_limit` connected subsets (and at most 64
  // vertices); otherwise the check falls back to sampling.
  int vertex_limit = 12;
  std::size_t subset_limit = 4096;
  std::size_t samples = 2000;
  // Largest number of separator candidates tried for one pair before the pair
  // is recorded as undecided.
  std::size_t separator_budget = 200000;
  // After a violation without a path certificate, keep scanning at most this
  // many pairs for one that has one.
  std::size_t witness_search_pairs = 1000000;
};

// Every pair of disjoint connected sets is joined by at most n edge-disjoint
// paths. Witness: X, Y and n+1 edge-disjoint X-Y paths.
Report edge_bottleneck_check(const Graph& g, int n, EdgeStrategy strategy, const BottleneckOptions& opts = {});

// Separator for one pair: n vertices outside x and y whose open m-balls,
// minus x and y, cut every x-y path. Candidates are tried in order of the
// largest distance to x ∪ y, ties by vertex id. Returns nullopt when none
// exists, or when `budget` candidates were exhausted (then *undecided is set).
std::optional<std::vector<Vertex>> find_fat_separator(const Graph& g, int m, int n, const VertexSet& x,
                                                      const VertexSet& y, std::size_t budget = 200000,
                                                      bool* undecided = nullptr);

// Best effort: `count` X-Y paths whose interiors avoid x ∪ y and are pairwise
// m-disjoint. Empty when the greedy search finds none.
std::vector<std::vector<Vertex>> find_fat_paths(const Graph& g, int m, int count, const VertexSet& x,
                                                const VertexSet& y);

// Every pair of connected m-disjoint sets admits a separator as above.
// Witness: X, Y, and (when found) n+1 pairwise m-disjoint X-Y paths.
Report fat_bottleneck_check(const Graph& g, int m, int n, FatStrategy strategy, const BottleneckOptions& opts = {});

}  // namespace coarse
