#pragma once

#include <optional>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

inline constexpr int kUnreached = -1;

// Distances from `source`; entries beyond `cap` (when given) are kUnreached.
std::vector<int> bfs_distances(const Graph& g, Vertex source, std::optional<int> cap = std::nullopt);

// Distance from the nearest member of `sources`.
std::vector<int> multi_source_distances(const Graph& g, const VertexSet& sources,
                                        std::optional<int> cap = std::nullopt);

// Dense n×n distance table. Only meant for graphs of a few thousand vertices.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  static DistanceMatrix all_pairs(const Graph& g);

  int size() const { return n_; }
  int operator()(Vertex u, Vertex v) const {
    return data_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)];
  }
  const int* row(Vertex u) const { return data_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(n_); }
  int diameter() const;

 private:
  int n_ = 0;
  std::vector<int> data_;
};

// Maximal m-connected pieces of `s` under the ambient metric of g. Pieces are
// ordered by smallest member; members sorted. Throws when m < 1.
std::vector<std::vector<Vertex>> m_connected_components(const Graph& g, const VertexSet& s, int m);

// Every cross pair at distance > m. Vacuously true for empty inputs.
bool are_m_disjoint(const Graph& g, const VertexSet& x, const VertexSet& y, int m);

// min over x in a, y in b of d(x,y); kUnreached when either set is empty.
int set_distance(const Graph& g, const VertexSet& a, const VertexSet& b);

// Vertices at distance strictly less than m from s; m <= 0 gives the empty set.
VertexSet neighborhood(const Graph& g, const VertexSet& s, int m);

// Induced subgraph on s is connected; empty set counts as connected.
bool is_connected_subset(const Graph& g, const VertexSet& s);

// Diameter of s measured in g (max pairwise ambient distance); 0 for |s| <= 1.
int ambient_diameter(const Graph& g, const VertexSet& s);

}  // namespace coarse
