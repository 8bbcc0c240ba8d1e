#include "coarse/graph.hpp"

#include <algorithm>
#include <numeric>

namespace coarse {

namespace {

std::size_t word_count(int universe) { return (static_cast<std::size_t>(universe) + 63) / 64; }

}  // namespace

VertexSet::VertexSet(int universe) : universe_(universe), words_(word_count(universe), 0) {
  if (universe < 0) throw std::invalid_argument("VertexSet: negative universe");
}

VertexSet::VertexSet(int universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(int universe, std::span<const Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(int universe) {
  VertexSet s(universe);
  for (Vertex v = 0; v < universe; ++v) s.insert(v);
  return s;
}

void VertexSet::insert(Vertex v) {
  if (v < 0 || v >= universe_) {
    throw std::out_of_range("VertexSet: vertex " + std::to_string(v) + " outside universe " +
                            std::to_string(universe_));
  }
  words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
  if (v < 0 || v >= universe_) return;
  words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

int VertexSet::size() const {
  int total = 0;
  for (auto w : words_) total += __builtin_popcountll(w);
  return total;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

Vertex VertexSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w])));
  }
  return -1;
}

void VertexSet::check_same_universe(const VertexSet& other) const {
  if (universe_ != other.universe_) throw std::invalid_argument("VertexSet: universe mismatch");
}

bool VertexSet::intersects(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges, std::optional<Vertex> root) {
  return build(vertex_count, std::vector<Edge>(edges.begin(), edges.end()), root, false);
}

Graph Graph::from_edges_dedup(int vertex_count, std::vector<Edge> edges, std::optional<Vertex> root) {
  return build(vertex_count, std::move(edges), root, true);
}

Graph Graph::build(int vertex_count, std::vector<Edge> edges, std::optional<Vertex> root, bool dedup) {
  if (vertex_count <= 0) throw GraphError("graph must have at least one vertex");
  if (root && (*root < 0 || *root >= vertex_count)) {
    throw GraphError("root " + std::to_string(*root) + " out of range");
  }
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) {
      if (dedup) continue;
      throw GraphError("self-loop at vertex " + std::to_string(u));
    }
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  auto dup = std::adjacent_find(norm.begin(), norm.end());
  if (dup != norm.end()) {
    if (!dedup) {
      throw GraphError("duplicate edge (" + std::to_string(dup->first) + "," +
                       std::to_string(dup->second) + ")");
    }
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  }

  Graph g;
  g.n_ = vertex_count;
  g.root_ = root;
  std::vector<std::size_t> deg(static_cast<std::size_t>(vertex_count), 0);
  for (auto [u, v] : norm) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  g.offsets_.assign(static_cast<std::size_t>(vertex_count) + 1, 0);
  for (std::size_t i = 0; i < deg.size(); ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.targets_.assign(g.offsets_.back(), 0);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : norm) {
    g.targets_[fill[static_cast<std::size_t>(u)]++] = v;
    g.targets_[fill[static_cast<std::size_t>(v)]++] = u;
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[static_cast<std::size_t>(v)]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[static_cast<std::size_t>(v) + 1]);
    std::sort(first, last);
  }

  // Connectivity.
  std::vector<char> seen(static_cast<std::size_t>(vertex_count), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != vertex_count) {
    throw GraphError("graph is disconnected (" + std::to_string(reached) + " of " +
                     std::to_string(vertex_count) + " vertices reachable from 0)");
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!contains_vertex(u) || !contains_vertex(v)) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Vertex Graph::root_or_throw() const {
  if (!root_) throw GraphError("graph has no root");
  return *root_;
}

Graph Graph::with_root(Vertex r) const {
  if (!contains_vertex(r)) throw GraphError("root " + std::to_string(r) + " out of range");
  Graph g = *this;
  g.root_ = r;
  return g;
}

PatternGraph PatternGraph::make(std::string name, int vertex_count, std::vector<Edge> edges) {
  if (vertex_count <= 0) throw std::invalid_argument("pattern must have at least one vertex");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("pattern edge out of range");
    }
    if (u == v) throw std::invalid_argument("pattern edges may not be loops");
  }
  return PatternGraph{std::move(name), vertex_count, std::move(edges)};
}

PatternGraph PatternGraph::named(const std::string& name) {
  if (name == "theta3") return make("theta3", 2, {{0, 1}, {0, 1}, {0, 1}});
  if (name == "c3") return make("c3", 3, {{0, 1}, {1, 2}, {2, 0}});
  if (name == "c4") return make("c4", 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  if (name == "k4") return make("k4", 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  throw std::invalid_argument("unknown pattern '" + name + "' (expected theta3|c3|c4|k4)");
}

int PatternGraph::degree(Vertex v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                        [v](const Edge& e) { return e.first == v || e.second == v; }));
}

int PatternGraph::multiplicity(Vertex u, Vertex v) const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [u, v](const Edge& e) {
    return (e.first == u && e.second == v) || (e.first == v && e.second == u);
  }));
}

int PatternGraph::min_degree() const {
  int best = static_cast<int>(edges.size()) * 2;
  for (Vertex v = 0; v < vertex_count; ++v) best = std::min(best, degree(v));
  return best;
}

}  // namespace coarse
