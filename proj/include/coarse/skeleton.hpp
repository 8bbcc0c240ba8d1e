#pragma once

#include <vector>

#include "coarse/graph.hpp"
#include "coarse/qi.hpp"
#include "coarse/report.hpp"

namespace coarse {

struct SkeletonParams {
  int lambda = 1;
  int k = 1;
};

// Unique N with N*lambda < d <= (N+1)*lambda; the root (d = 0) gets -1.
int layer_index(int d, int lambda);

// Quotient of a rooted graph by the blocks of its annuli. Block ids are in
// (layer, smallest member) order; the quotient is rooted at the root's block.
struct Skeleton {
  Graph base;
  SkeletonParams params;
  std::vector<int> depth;      // BFS distance from the root in base
  std::vector<int> layer_of;   // per base vertex
  std::vector<int> block_of;   // the natural map
  std::vector<std::vector<Vertex>> blocks;
  std::vector<int> block_layer;
  Graph quotient;

  int block_count() const { return static_cast<int>(blocks.size()); }
  VertexSet block_set(int b) const;
  // Preimage of a set of quotient vertices.
  VertexSet preimage(const VertexSet& quotient_vertices) const;
};

Skeleton build_skeleton(const Graph& g, SkeletonParams params);

// Bipartite by layer parity, connected, simple, every quotient edge backed by
// a base edge, every quotient vertex backed by a base vertex. Also reports
// whether each block's quotient depth equals its layer + 1.
Report check_skeleton_facts(const Skeleton& s);

struct BlockDiameter {
  int diam = 0;      // max ambient diameter over blocks
  int block = -1;    // a block attaining it
  int scale = 1;     // M in d <= M d_Q + 2M; equals diam + 1
  long long a() const { return scale; }
  long long b() const { return 2LL * scale; }
};
BlockDiameter max_block_diameter(const Skeleton& s);

// d_Q(f x, f y) <= d(x,y) <= M d_Q + 2M on all pairs (or a seeded sample).
Report verify_natural_map_qi(const Skeleton& s, const SamplingOptions& opts = {});

// Distinct non-adjacent blocks have preimages at distance >= min(lambda, k).
Report check_no_edge_disjointness(const Skeleton& s);

// Quotient distance >= n implies preimage distance >= min(lambda, k) (n - 1).
Report check_distance_expansion(const Skeleton& s, int n);

// The (n, k2) skeleton of s.quotient rooted at the root's block, with the
// composite partition of the base vertices.
struct ComposedSkeleton {
  Skeleton outer;             // skeleton of s.quotient
  std::vector<int> block_of;  // base vertex -> outer block id
};
ComposedSkeleton compose_skeleton(const Skeleton& s, int n, int k2);

// build_skeleton(g, n*lambda, k) against compose_skeleton(build_skeleton(g,
// lambda, k), n, 1): equal partitions and matching quotient edges.
Report verify_composition_identity(const Graph& g, int lambda, int k, int n);

// Quotient pairs at distance >= 2 in the (2,2) skeleton of s.quotient come
// from s-level sets >= 3 apart; quotient-disjoint sets at distance > n come
// from sets at distance > n + floor(n/2). Distances are measured in s.quotient.
Report check_contraction_bounds(const Skeleton& s, const std::vector<int>& big_ns = {2, 3, 4});

Json skeleton_to_json(const Skeleton& s);

}  // namespace coarse
