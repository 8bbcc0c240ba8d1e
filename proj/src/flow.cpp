#include "coarse/flow.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "coarse/metric.hpp"

namespace coarse {

EdgeFlow::EdgeFlow(const Graph& g) : g_(&g), edges_(g.edges()), adj_(static_cast<std::size_t>(g.vertex_count())) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [u, v] = edges_[e];
    adj_[static_cast<std::size_t>(u)].emplace_back(v, static_cast<int>(e));
    adj_[static_cast<std::size_t>(v)].emplace_back(u, static_cast<int>(e));
  }
  flow_.assign(edges_.size(), 0);
  parent_edge_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  parent_.assign(static_cast<std::size_t>(g.vertex_count()), -1);
}

bool EdgeFlow::augment(const VertexSet& x, const VertexSet& y) {
  std::fill(parent_.begin(), parent_.end(), -2);  // -2 unvisited, -1 source
  queue_.clear();
  x.for_each([&](Vertex s) {
    parent_[static_cast<std::size_t>(s)] = -1;
    queue_.push_back(s);
  });
  std::size_t head = 0;
  Vertex sink = -1;
  while (head < queue_.size() && sink < 0) {
    const Vertex u = queue_[head++];
    for (auto [w, e] : adj_[static_cast<std::size_t>(u)]) {
      if (parent_[static_cast<std::size_t>(w)] != -2) continue;
      // residual u -> w
      const int dir = (edges_[static_cast<std::size_t>(e)].first == u) ? 1 : -1;
      if (flow_[static_cast<std::size_t>(e)] * dir >= 1) continue;
      parent_[static_cast<std::size_t>(w)] = u;
      parent_edge_[static_cast<std::size_t>(w)] = e;
      if (y.contains(w)) {
        sink = w;
        break;
      }
      queue_.push_back(w);
    }
  }
  if (sink < 0) return false;
  for (Vertex v = sink; parent_[static_cast<std::size_t>(v)] != -1; v = parent_[static_cast<std::size_t>(v)]) {
    const Vertex u = parent_[static_cast<std::size_t>(v)];
    const int e = parent_edge_[static_cast<std::size_t>(v)];
    const int dir = (edges_[static_cast<std::size_t>(e)].first == u) ? 1 : -1;
    flow_[static_cast<std::size_t>(e)] += dir;
  }
  return true;
}

int EdgeFlow::count(const VertexSet& x, const VertexSet& y, int limit) {
  std::fill(flow_.begin(), flow_.end(), 0);
  int total = 0;
  while ((limit < 0 || total < limit) && augment(x, y)) ++total;
  return total;
}

std::vector<std::vector<Vertex>> EdgeFlow::paths(const VertexSet& x, const VertexSet& y) const {
  // Outgoing flow arcs per vertex; consumed as walks are extracted.
  std::vector<std::vector<Vertex>> out_arcs(static_cast<std::size_t>(g_->vertex_count()));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto [u, v] = edges_[e];
    if (flow_[e] == 1) out_arcs[static_cast<std::size_t>(u)].push_back(v);
    if (flow_[e] == -1) out_arcs[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& arcs : out_arcs) std::sort(arcs.begin(), arcs.end(), std::greater<>());
  std::vector<std::vector<Vertex>> result;
  for (Vertex s : x.members()) {
    while (!out_arcs[static_cast<std::size_t>(s)].empty()) {
      std::vector<Vertex> walk{s};
      Vertex cur = s;
      while (!y.contains(cur)) {
        auto& arcs = out_arcs[static_cast<std::size_t>(cur)];
        if (arcs.empty()) throw std::logic_error("flow decomposition hit a dead end");
        const Vertex next = arcs.back();
        arcs.pop_back();
        // Drop any cycle closed by this step.
        auto seen = std::find(walk.begin(), walk.end(), next);
        if (seen != walk.end()) {
          walk.erase(seen + 1, walk.end());
        } else {
          walk.push_back(next);
        }
        cur = next;
      }
      result.push_back(std::move(walk));
    }
  }
  return result;
}

DisjointPaths max_edge_disjoint_paths(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.universe() != g.vertex_count() || y.universe() != g.vertex_count()) {
    throw std::invalid_argument("max_edge_disjoint_paths: vertex set universe mismatch");
  }
  if (x.empty() || y.empty()) throw std::invalid_argument("max_edge_disjoint_paths: x and y must be nonempty");
  if (x.intersects(y)) throw std::invalid_argument("max_edge_disjoint_paths: x and y overlap");
  if (!is_connected_subset(g, x) || !is_connected_subset(g, y)) {
    throw std::invalid_argument("max_edge_disjoint_paths: x and y must be connected");
  }
  EdgeFlow flow(g);
  DisjointPaths out;
  out.count = flow.count(x, y);
  out.paths = flow.paths(x, y);
  return out;
}

}  // namespace coarse
