#include "coarse/perturb.hpp"

#include <algorithm>
#include <map>

#include "coarse/metric.hpp"

namespace coarse {

EditSpec EditSpec::add_edge(Vertex u, Vertex v) {
  EditSpec e;
  e.kind = Kind::add_edge;
  e.pairs = {{u, v}};
  return e;
}

EditSpec EditSpec::add_edges_bounded(std::vector<Edge> pairs, int m) {
  EditSpec e;
  e.kind = Kind::add_edges_bounded;
  e.pairs = std::move(pairs);
  e.bound = m;
  return e;
}

EditSpec EditSpec::remove_cycle_edge(Vertex u, Vertex v, std::optional<int> m) {
  EditSpec e;
  e.kind = Kind::remove_cycle_edge;
  e.pairs = {{u, v}};
  e.bound = m;
  return e;
}

EditSpec EditSpec::subdivide_all(int m) {
  EditSpec e;
  e.kind = Kind::subdivide_all;
  e.bound = m;
  return e;
}

EditSpec EditSpec::contract_components(std::vector<std::vector<Vertex>> sets, int m) {
  EditSpec e;
  e.kind = Kind::contract_components;
  e.sets = std::move(sets);
  e.bound = m;
  return e;
}

std::string EditSpec::name() const {
  switch (kind) {
    case Kind::add_edge: return "add-edge";
    case Kind::add_edges_bounded: return "add-edges-bounded";
    case Kind::remove_cycle_edge: return "remove-cycle-edge";
    case Kind::subdivide_all: return "subdivide-all";
    case Kind::contract_components: return "contract-components";
  }
  return "";
}

EditSpec EditSpec::from_json(const Json& j) {
  const std::string op = j.at("op").get<std::string>();
  EditSpec e;
  if (op == "add-edge") e.kind = Kind::add_edge;
  else if (op == "add-edges-bounded") e.kind = Kind::add_edges_bounded;
  else if (op == "remove-cycle-edge") e.kind = Kind::remove_cycle_edge;
  else if (op == "subdivide-all") e.kind = Kind::subdivide_all;
  else if (op == "contract-components") e.kind = Kind::contract_components;
  else throw std::invalid_argument("unknown edit op: " + op);
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) e.pairs.emplace_back(p.at(0).get<Vertex>(), p.at(1).get<Vertex>());
  }
  if (j.contains("sets")) e.sets = j.at("sets").get<std::vector<std::vector<Vertex>>>();
  if (j.contains("M") && !j.at("M").is_null()) e.bound = j.at("M").get<int>();
  return e;
}

Json EditSpec::to_json() const {
  Json j;
  j["op"] = name();
  if (!pairs.empty()) j["pairs"] = pairs;
  if (!sets.empty()) j["sets"] = sets;
  j["M"] = bound ? Json(*bound) : Json(nullptr);
  return j;
}

namespace {

QIWitness predicted(long long a, long long b) {
  QIWitness q;
  q.a_halves = static_cast<int>(2 * a);
  q.b = b;
  return q;
}

std::vector<Vertex> identity_map(int n) {
  std::vector<Vertex> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return m;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PerturbError(what + " (this edit need not preserve the quasi-isometry type)");
}

int need_bound(const EditSpec& e) {
  require(e.bound.has_value(), e.name() + " needs a bound M");
  require(*e.bound >= 1, e.name() + " needs M >= 1");
  return *e.bound;
}

// d(u, v) once the edge uv is gone; kUnreached for a bridge.
int distance_without_edge(const Graph& g, Vertex u, Vertex v) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), kUnreached);
  std::vector<Vertex> queue{u};
  dist[static_cast<std::size_t>(u)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex a = queue[head];
    for (Vertex b : g.neighbors(a)) {
      if ((a == u && b == v) || dist[static_cast<std::size_t>(b)] != kUnreached) continue;
      dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(a)] + 1;
      queue.push_back(b);
    }
  }
  return dist[static_cast<std::size_t>(v)];
}

void require_vertex(const Graph& g, Vertex v) {
  if (!g.contains_vertex(v)) throw std::invalid_argument("vertex out of range: " + std::to_string(v));
}

}  // namespace

PerturbResult perturb(const Graph& g, const EditSpec& edit) {
  const int n = g.vertex_count();
  auto edges = g.edges();
  PerturbResult out{g, identity_map(n), {}, {}};

  switch (edit.kind) {
    case EditSpec::Kind::add_edge: {
      if (edit.pairs.size() != 1) throw std::invalid_argument("add-edge takes exactly one pair");
      auto [u, v] = edit.pairs[0];
      require_vertex(g, u);
      require_vertex(g, v);
      if (u == v) throw std::invalid_argument("add-edge: loop");
      if (g.has_edge(u, v)) throw std::invalid_argument("add-edge: edge already present");
      const int d = bfs_distances(g, u)[static_cast<std::size_t>(v)];
      edges.emplace_back(u, v);
      out.graph = Graph::from_edges(n, edges, g.root());
      out.predicted = predicted(1, d);
      out.rule = "d' <= d <= d' + d(u,v)";
      return out;
    }
    case EditSpec::Kind::add_edges_bounded: {
      const int m = need_bound(edit);
      for (auto [u, v] : edit.pairs) {
        require_vertex(g, u);
        require_vertex(g, v);
        if (u == v) throw std::invalid_argument("add-edges-bounded: loop");
        const int d = bfs_distances(g, u, m)[static_cast<std::size_t>(v)];
        require(d != kUnreached, "add-edges-bounded: pair (" + std::to_string(u) + "," + std::to_string(v) +
                                     ") is farther apart than M");
        edges.emplace_back(u, v);
      }
      out.graph = Graph::from_edges_dedup(n, edges, g.root());
      out.predicted = predicted(m, 0);
      out.rule = "d' <= d <= M d'";
      return out;
    }
    case EditSpec::Kind::remove_cycle_edge: {
      if (edit.pairs.size() != 1) throw std::invalid_argument("remove-cycle-edge takes exactly one pair");
      auto [u, v] = edit.pairs[0];
      require_vertex(g, u);
      require_vertex(g, v);
      if (!g.has_edge(u, v)) throw std::invalid_argument("remove-cycle-edge: no such edge");
      const Edge e{std::min(u, v), std::max(u, v)};
      const int alt = distance_without_edge(g, u, v);
      require(alt != kUnreached, "remove-cycle-edge: (" + std::to_string(u) + "," + std::to_string(v) +
                                     ") is a bridge");
      edges.erase(std::find(edges.begin(), edges.end(), e));
      const Graph h = Graph::from_edges(n, edges, g.root());
      if (edit.bound) require(alt <= *edit.bound, "remove-cycle-edge: no alternative path of length <= M survives");
      out.graph = h;
      out.predicted = predicted(1, edit.bound.value_or(alt));
      out.rule = "d <= d' <= d + M";
      return out;
    }
    case EditSpec::Kind::subdivide_all: {
      const int m = need_bound(edit);
      std::vector<Edge> sub;
      int next = n;
      for (auto [u, v] : edges) {
        Vertex prev = u;
        for (int i = 1; i < m; ++i) {
          sub.emplace_back(prev, next);
          prev = next++;
        }
        sub.emplace_back(prev, v);
      }
      out.graph = Graph::from_edges(next, sub, g.root());
      out.predicted = predicted(m, 0);
      out.rule = "d <= d' <= M d";
      return out;
    }
    case EditSpec::Kind::contract_components: {
      const int m = need_bound(edit);
      require(!edit.sets.empty(), "contract-components: no sets given");
      std::vector<int> set_of(static_cast<std::size_t>(n), -1);
      for (std::size_t i = 0; i < edit.sets.size(); ++i) {
        const auto& s = edit.sets[i];
        require(!s.empty(), "contract-components: empty set");
        for (Vertex v : s) {
          require_vertex(g, v);
          require(set_of[static_cast<std::size_t>(v)] == -1, "contract-components: sets overlap");
          set_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
        const VertexSet vs(n, std::span<const Vertex>(s));
        require(is_connected_subset(g, vs), "contract-components: set " + std::to_string(i) + " is not connected");
        require(ambient_diameter(g, vs) <= m, "contract-components: set " + std::to_string(i) +
                                                  " has diameter larger than M");
      }
      // New ids in order of each class's smallest vertex.
      std::vector<Vertex> set_id(edit.sets.size(), -1);
      int next = 0;
      for (Vertex v = 0; v < n; ++v) {
        const int s = set_of[static_cast<std::size_t>(v)];
        if (s < 0) {
          out.map[static_cast<std::size_t>(v)] = next++;
        } else {
          if (set_id[static_cast<std::size_t>(s)] < 0) set_id[static_cast<std::size_t>(s)] = next++;
          out.map[static_cast<std::size_t>(v)] = set_id[static_cast<std::size_t>(s)];
        }
      }
      std::vector<Edge> mapped;
      for (auto [u, v] : edges) mapped.emplace_back(out.map[static_cast<std::size_t>(u)], out.map[static_cast<std::size_t>(v)]);
      std::optional<Vertex> root;
      if (g.root()) root = out.map[static_cast<std::size_t>(*g.root())];
      out.graph = Graph::from_edges_dedup(next, mapped, root);
      if (edit.sets.size() == 1) {
        out.predicted = predicted(1, m);
        out.rule = "d' <= d <= d' + M";
      } else {
        out.predicted = predicted(m + 1, m);
        out.rule = "d' <= d <= (M + 1) d' + M";
      }
      return out;
    }
  }
  throw std::logic_error("unhandled edit kind");
}

Report check_perturbation(const Graph& g, const EditSpec& edit, const SamplingOptions& opts) {
  const auto res = perturb(g, edit);
  Report r;
  r.check = "perturb";
  r.params = {{"edit", edit.to_json()}};
  const auto hist = collect_pair_distances(g, res.graph, res.map, opts);
  r.mode = hist.mode;
  if (hist.mode == "sampled") r.seed = hist.seed;
  const auto measured = measure_distortion(hist);
  r.details["vertices"] = res.graph.vertex_count();
  r.details["edges"] = res.graph.edge_count();
  r.details["predicted"] = {{"a", res.predicted.a()}, {"b", res.predicted.b}};
  r.details["rule"] = res.rule;
  r.details["measured"] = measured.to_json();
  if (!qi_feasible(hist, res.predicted.a_halves, 2, res.predicted.b)) {
    r.fail({{"predicted", r.details["predicted"]}, {"measured", measured.to_json()}});
  }
  return r;
}

}  // namespace coarse
