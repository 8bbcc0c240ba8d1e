#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Raised for malformed graph input: loops, duplicate edges, out-of-range ids,
// disconnection.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Membership over vertex ids [0, universe) with dense bitset semantics.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe);
  VertexSet(int universe, std::initializer_list<Vertex> members);
  VertexSet(int universe, std::span<const Vertex> members);

  static VertexSet full(int universe);

  int universe() const { return universe_; }
  bool contains(Vertex v) const {
    return v >= 0 && v < universe_ && ((words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U);
  }
  void insert(Vertex v);
  void erase(Vertex v);
  void clear();

  int size() const;
  bool empty() const;
  std::vector<Vertex> members() const;
  // Smallest member, or -1 when empty.
  Vertex first() const;

  bool intersects(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  bool operator==(const VertexSet& other) const = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int bit = __builtin_ctzll(bits);
        f(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

 private:
  void check_same_universe(const VertexSet& other) const;

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Finite undirected simple connected graph with sorted CSR adjacency and an
// optional root. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Validates ids, rejects loops, duplicate edges, and disconnected input.
  static Graph from_edges(int vertex_count, std::span<const Edge> edges,
                          std::optional<Vertex> root = std::nullopt);
  static Graph from_edges(int vertex_count, std::initializer_list<Edge> edges,
                          std::optional<Vertex> root = std::nullopt) {
    return from_edges(vertex_count, std::span<const Edge>(edges.begin(), edges.size()), root);
  }
  // Same as from_edges but silently drops loops and duplicate edges; used by
  // quotient constructions where parallel G-edges collapse.
  static Graph from_edges_dedup(int vertex_count, std::vector<Edge> edges,
                                std::optional<Vertex> root = std::nullopt);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[static_cast<std::size_t>(v)],
            targets_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }
  int degree(Vertex v) const {
    return static_cast<int>(offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)]);
  }
  bool has_edge(Vertex u, Vertex v) const;
  // Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::optional<Vertex> root() const { return root_; }
  Vertex root_or_throw() const;
  Graph with_root(Vertex r) const;

  bool contains_vertex(Vertex v) const { return v >= 0 && v < n_; }
  bool operator==(const Graph& other) const = default;

 private:
  static Graph build(int vertex_count, std::vector<Edge> edges, std::optional<Vertex> root,
                     bool dedup);

  int n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::optional<Vertex> root_;
};

// Small undirected multigraph used as a minor pattern. Parallel edges are
// allowed, loops are not.
struct PatternGraph {
  std::string name;
  int vertex_count = 0;
  std::vector<Edge> edges;

  static PatternGraph make(std::string name, int vertex_count, std::vector<Edge> edges);
  // theta3 | c3 | c4 | k4
  static PatternGraph named(const std::string& name);

  int degree(Vertex v) const;
  int multiplicity(Vertex u, Vertex v) const;
  int min_degree() const;
};

}  // namespace coarse
