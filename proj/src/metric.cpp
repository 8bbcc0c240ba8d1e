#include "coarse/metric.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace coarse {

namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (!g.contains_vertex(v)) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

void check_universe(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count()) {
    throw std::invalid_argument("vertex set universe " + std::to_string(s.universe()) +
                                " does not match graph order " + std::to_string(g.vertex_count()));
  }
}

std::vector<int> bfs_from(const Graph& g, std::vector<Vertex> frontier, std::optional<int> cap) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreached);
  for (Vertex s : frontier) dist[static_cast<std::size_t>(s)] = 0;
  std::vector<Vertex> queue = std::move(frontier);
  std::size_t head = 0;
  while (head < queue.size()) {
    const Vertex u = queue[head++];
    const int du = dist[static_cast<std::size_t>(u)];
    if (cap && du >= *cap) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] == kUnreached) {
        dist[static_cast<std::size_t>(w)] = du + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

std::vector<int> bfs_distances(const Graph& g, Vertex source, std::optional<int> cap) {
  check_vertex(g, source);
  return bfs_from(g, {source}, cap);
}

std::vector<int> multi_source_distances(const Graph& g, const VertexSet& sources, std::optional<int> cap) {
  check_universe(g, sources);
  return bfs_from(g, sources.members(), cap);
}

DistanceMatrix DistanceMatrix::all_pairs(const Graph& g) {
  DistanceMatrix dm;
  dm.n_ = g.vertex_count();
  dm.data_.resize(static_cast<std::size_t>(dm.n_) * static_cast<std::size_t>(dm.n_));
  for (Vertex u = 0; u < dm.n_; ++u) {
    auto row = bfs_from(g, {u}, std::nullopt);
    std::copy(row.begin(), row.end(), dm.data_.begin() + static_cast<std::ptrdiff_t>(u) * dm.n_);
  }
  return dm;
}

int DistanceMatrix::diameter() const {
  return data_.empty() ? 0 : *std::max_element(data_.begin(), data_.end());
}

std::vector<std::vector<Vertex>> m_connected_components(const Graph& g, const VertexSet& s, int m) {
  if (m < 1) throw std::invalid_argument("m_connected_components requires m >= 1");
  check_universe(g, s);
  const auto members = s.members();
  if (members.empty()) return {};
  UnionFind uf(g.vertex_count());
  // Truncated BFS from every member; the cap keeps this local.
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreached);
  std::vector<Vertex> queue;
  for (Vertex src : members) {
    queue.clear();
    queue.push_back(src);
    dist[static_cast<std::size_t>(src)] = 0;
    std::size_t head = 0;
    while (head < queue.size()) {
      const Vertex u = queue[head++];
      const int du = dist[static_cast<std::size_t>(u)];
      if (u != src && s.contains(u)) uf.unite(src, u);
      if (du >= m) continue;
      for (Vertex w : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(w)] == kUnreached) {
          dist[static_cast<std::size_t>(w)] = du + 1;
          queue.push_back(w);
        }
      }
    }
    for (Vertex u : queue) dist[static_cast<std::size_t>(u)] = kUnreached;
  }
  std::vector<std::vector<Vertex>> out;
  std::vector<int> slot(static_cast<std::size_t>(g.vertex_count()), -1);
  for (Vertex v : members) {
    const int r = uf.find(v);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
  }
  return out;
}

bool are_m_disjoint(const Graph& g, const VertexSet& x, const VertexSet& y, int m) {
  check_universe(g, x);
  check_universe(g, y);
  if (x.empty() || y.empty()) return true;
  if (m < 0) return true;
  auto dist = bfs_from(g, x.members(), m);
  bool ok = true;
  y.for_each([&](Vertex v) {
    if (dist[static_cast<std::size_t>(v)] != kUnreached) ok = false;
  });
  return ok;
}

int set_distance(const Graph& g, const VertexSet& a, const VertexSet& b) {
  check_universe(g, a);
  check_universe(g, b);
  if (a.empty() || b.empty()) return kUnreached;
  auto dist = bfs_from(g, a.members(), std::nullopt);
  int best = kUnreached;
  b.for_each([&](Vertex v) {
    const int d = dist[static_cast<std::size_t>(v)];
    if (best == kUnreached || d < best) best = d;
  });
  return best;
}

VertexSet neighborhood(const Graph& g, const VertexSet& s, int m) {
  check_universe(g, s);
  VertexSet out(g.vertex_count());
  if (m <= 0 || s.empty()) return out;
  auto dist = bfs_from(g, s.members(), m - 1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dist[static_cast<std::size_t>(v)] != kUnreached) out.insert(v);
  }
  return out;
}

bool is_connected_subset(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  const Vertex start = s.first();
  if (start < 0) return true;
  VertexSet seen(g.vertex_count());
  seen.insert(start);
  std::vector<Vertex> stack{start};
  int reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u)) {
      if (s.contains(w) && !seen.contains(w)) {
        seen.insert(w);
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == s.size();
}

int ambient_diameter(const Graph& g, const VertexSet& s) {
  check_universe(g, s);
  int best = 0;
  const auto members = s.members();
  if (members.size() <= 1) return 0;
  for (Vertex u : members) {
    auto dist = bfs_from(g, {u}, std::nullopt);
    for (Vertex v : members) best = std::max(best, dist[static_cast<std::size_t>(v)]);
  }
  return best;
}

}  // namespace coarse
