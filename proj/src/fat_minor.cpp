#include "coarse/fat_minor.hpp"

#include <algorithm>
#include <set>

#include "coarse/metric.hpp"

namespace coarse {

std::string to_string(IncidenceRule rule) {
  switch (rule) {
    case IncidenceRule::strict: return "strict";
    case IncidenceRule::near_shared: return "near-shared";
    case IncidenceRule::lenient: return "lenient";
  }
  return "";
}

IncidenceRule parse_incidence_rule(const std::string& s) {
  if (s == "strict") return IncidenceRule::strict;
  if (s == "near-shared") return IncidenceRule::near_shared;
  if (s == "lenient") return IncidenceRule::lenient;
  throw std::invalid_argument("unknown incidence rule: " + s);
}

Json FatEmbedding::to_json() const {
  Json j;
  j["pattern"] = {{"name", pattern.name}, {"vertices", pattern.vertex_count}, {"edges", pattern.edges}};
  j["branch_sets"] = branch_sets;
  j["branch_paths"] = branch_paths;
  j["fatness"] = fatness;
  return j;
}

FatEmbedding FatEmbedding::from_json(const Json& j) {
  FatEmbedding e;
  const auto& p = j.at("pattern");
  if (p.is_string()) {
    e.pattern = PatternGraph::named(p.get<std::string>());
  } else {
    std::vector<Edge> edges;
    for (const auto& ej : p.at("edges")) edges.emplace_back(ej.at(0).get<Vertex>(), ej.at(1).get<Vertex>());
    e.pattern = PatternGraph::make(p.value("name", std::string("custom")), p.at("vertices").get<int>(), edges);
  }
  e.branch_sets = j.at("branch_sets").get<std::vector<std::vector<Vertex>>>();
  e.branch_paths = j.at("branch_paths").get<std::vector<std::vector<Vertex>>>();
  e.fatness = j.value("fatness", 0);
  return e;
}

namespace {

std::string set_name(int v) { return "B" + std::to_string(v); }
std::string path_name(int e) { return "P" + std::to_string(e); }

struct Objects {
  std::vector<VertexSet> sets;
  std::vector<VertexSet> interiors;
  std::vector<std::vector<int>> set_dist;       // BFS from each set
  std::vector<std::vector<int>> interior_dist;  // BFS from each interior (empty when interior empty)
};

int min_over(const std::vector<int>& dist, const VertexSet& s) {
  int best = -1;
  s.for_each([&](Vertex v) {
    const int d = dist[static_cast<std::size_t>(v)];
    if (d != kUnreached && (best < 0 || d < best)) best = d;
  });
  return best;
}

// Structural checks; returns false after recording failures.
bool check_structure(const Graph& g, const FatEmbedding& emb, Report& r) {
  const int n = g.vertex_count();
  const auto& h = emb.pattern;
  bool ok = true;
  auto bad = [&](Json w) {
    w["kind"] = "structure";
    r.fail(std::move(w));
    ok = false;
  };
  if (static_cast<int>(emb.branch_sets.size()) != h.vertex_count) {
    bad({{"problem", "branch set count differs from pattern vertex count"}});
    return false;
  }
  if (emb.branch_paths.size() != h.edges.size()) {
    bad({{"problem", "branch path count differs from pattern edge count"}});
    return false;
  }
  if (emb.fatness < 0) bad({{"problem", "negative fatness"}});
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < h.vertex_count; ++v) {
    const auto& s = emb.branch_sets[static_cast<std::size_t>(v)];
    if (s.empty()) {
      bad({{"object", set_name(v)}, {"problem", "empty branch set"}});
      continue;
    }
    VertexSet vs(n);
    for (Vertex x : s) {
      if (!g.contains_vertex(x)) {
        bad({{"object", set_name(v)}, {"problem", "vertex out of range"}, {"vertex", x}});
        return false;
      }
      if (owner[static_cast<std::size_t>(x)] == v) {
        bad({{"object", set_name(v)}, {"problem", "repeated vertex"}, {"vertex", x}});
      } else if (owner[static_cast<std::size_t>(x)] >= 0) {
        bad({{"object", set_name(v)},
             {"other", set_name(owner[static_cast<std::size_t>(x)])},
             {"problem", "branch sets overlap"},
             {"vertex", x}});
      }
      owner[static_cast<std::size_t>(x)] = v;
      vs.insert(x);
    }
    if (!is_connected_subset(g, vs)) bad({{"object", set_name(v)}, {"problem", "branch set not connected"}});
  }
  std::vector<int> interior_owner(static_cast<std::size_t>(n), -1);
  std::set<Edge> direct_edges;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& p = emb.branch_paths[e];
    const auto [u, v] = h.edges[e];
    const std::string name = path_name(static_cast<int>(e));
    if (p.size() < 2) {
      bad({{"object", name}, {"problem", "path needs at least two vertices"}});
      continue;
    }
    bool in_range = true;
    for (Vertex x : p) in_range = in_range && g.contains_vertex(x);
    if (!in_range) {
      bad({{"object", name}, {"problem", "vertex out of range"}});
      return false;
    }
    if (owner[static_cast<std::size_t>(p.front())] != u) {
      bad({{"object", name}, {"problem", "path does not start in its first endpoint set"}, {"vertex", p.front()}});
    }
    if (owner[static_cast<std::size_t>(p.back())] != v) {
      bad({{"object", name}, {"problem", "path does not end in its second endpoint set"}, {"vertex", p.back()}});
    }
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!seen.insert(p[i]).second) bad({{"object", name}, {"problem", "path revisits a vertex"}, {"vertex", p[i]}});
      if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1])) {
        bad({{"object", name}, {"problem", "consecutive path vertices not adjacent"}, {"edge", {p[i], p[i + 1]}}});
      }
      if (i == 0 || i + 1 == p.size()) continue;
      const Vertex x = p[i];
      if (owner[static_cast<std::size_t>(x)] >= 0) {
        bad({{"object", name},
             {"other", set_name(owner[static_cast<std::size_t>(x)])},
             {"problem", "path interior meets a branch set"},
             {"vertex", x}});
      }
      const int other = interior_owner[static_cast<std::size_t>(x)];
      if (other >= 0 && other != static_cast<int>(e)) {
        bad({{"object", name}, {"other", path_name(other)}, {"problem", "path interiors overlap"}, {"vertex", x}});
      }
      interior_owner[static_cast<std::size_t>(x)] = static_cast<int>(e);
    }
    if (p.size() == 2) {
      const Edge key{std::min(p[0], p[1]), std::max(p[0], p[1])};
      if (!direct_edges.insert(key).second) {
        bad({{"object", name}, {"problem", "two paths use the same edge"}, {"edge", {key.first, key.second}}});
      }
    }
  }
  return ok;
}

Objects build_objects(const Graph& g, const FatEmbedding& emb) {
  const int n = g.vertex_count();
  Objects o;
  for (const auto& s : emb.branch_sets) {
    o.sets.emplace_back(n, std::span<const Vertex>(s));
    o.set_dist.push_back(multi_source_distances(g, o.sets.back()));
  }
  for (const auto& p : emb.branch_paths) {
    VertexSet in(n);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) in.insert(p[i]);
    o.interior_dist.push_back(in.empty() ? std::vector<int>{} : multi_source_distances(g, in));
    o.interiors.push_back(std::move(in));
  }
  return o;
}

bool shares_endpoint(const Edge& a, const Edge& b) {
  return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

// Pairs (p, q) of the two interiors with d(p,q) <= m that are not both within
// m of a shared endpoint set. Returns the closest such distance, or -1.
int near_shared_excess(const Graph& g, const FatEmbedding& emb, const Objects& o, std::size_t e, std::size_t f,
                       int m) {
  const auto& he = emb.pattern.edges[e];
  const auto& hf = emb.pattern.edges[f];
  std::vector<int> shared;
  for (int w : {he.first, he.second})
    if (w == hf.first || w == hf.second) shared.push_back(w);
  int worst = -1;
  o.interiors[e].for_each([&](Vertex p) {
    const auto dp = bfs_distances(g, p, m);
    o.interiors[f].for_each([&](Vertex q) {
      const int d = dp[static_cast<std::size_t>(q)];
      if (d == kUnreached) return;
      // exempt only when both points sit near the same shared set
      bool exempt = false;
      for (int w : shared) {
        const auto& sd = o.set_dist[static_cast<std::size_t>(w)];
        if (sd[static_cast<std::size_t>(p)] <= m && sd[static_cast<std::size_t>(q)] <= m) exempt = true;
      }
      if (!exempt && (worst < 0 || d < worst)) worst = d;
    });
  });
  return worst;
}

// Records every non-exempt pair at distance <= m.
void check_distances(const Graph& g, const FatEmbedding& emb, const Objects& o, IncidenceRule rule, int m,
                     Report* r, bool* valid) {
  const auto& h = emb.pattern;
  auto violate = [&](const std::string& a, const std::string& b, int d) {
    *valid = false;
    if (r) r->fail({{"kind", "distance"}, {"a", a}, {"b", b}, {"distance", d}, {"required", "> " + std::to_string(m)}});
  };
  for (int u = 0; u < h.vertex_count; ++u)
    for (int v = u + 1; v < h.vertex_count; ++v) {
      const int d = min_over(o.set_dist[static_cast<std::size_t>(u)], o.sets[static_cast<std::size_t>(v)]);
      if (d <= m) violate(set_name(u), set_name(v), d);
    }
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (o.interiors[e].empty()) continue;
    for (int w = 0; w < h.vertex_count; ++w) {
      if (w == h.edges[e].first || w == h.edges[e].second) continue;
      const int d = min_over(o.set_dist[static_cast<std::size_t>(w)], o.interiors[e]);
      if (d <= m) violate(set_name(w), path_name(static_cast<int>(e)), d);
    }
  }
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    for (std::size_t f = e + 1; f < h.edges.size(); ++f) {
      if (o.interiors[e].empty() || o.interiors[f].empty()) continue;
      const bool incident = shares_endpoint(h.edges[e], h.edges[f]);
      const int d = min_over(o.interior_dist[e], o.interiors[f]);
      if (d > m) continue;
      if (incident && rule == IncidenceRule::lenient) continue;
      if (incident && rule == IncidenceRule::near_shared) {
        const int excess = near_shared_excess(g, emb, o, e, f, m);
        if (excess >= 0) violate(path_name(static_cast<int>(e)), path_name(static_cast<int>(f)), excess);
        continue;
      }
      violate(path_name(static_cast<int>(e)), path_name(static_cast<int>(f)), d);
    }
}

std::optional<int> achieved_from_objects(const Graph& g, const FatEmbedding& emb, const Objects& o,
                                         IncidenceRule rule) {
  const int diam = DistanceMatrix::all_pairs(g).diameter();
  if (rule == IncidenceRule::near_shared) {
    for (int m = diam; m >= 0; --m) {
      bool valid = true;
      check_distances(g, emb, o, rule, m, nullptr, &valid);
      if (valid) return m;
    }
    return std::nullopt;
  }
  // Smallest distance over the pairs that must be separated, minus one.
  const auto& h = emb.pattern;
  int best = diam + 1;
  for (int u = 0; u < h.vertex_count; ++u)
    for (int v = u + 1; v < h.vertex_count; ++v)
      best = std::min(best, min_over(o.set_dist[static_cast<std::size_t>(u)], o.sets[static_cast<std::size_t>(v)]));
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    if (o.interiors[e].empty()) continue;
    for (int w = 0; w < h.vertex_count; ++w) {
      if (w == h.edges[e].first || w == h.edges[e].second) continue;
      best = std::min(best, min_over(o.set_dist[static_cast<std::size_t>(w)], o.interiors[e]));
    }
    for (std::size_t f = e + 1; f < h.edges.size(); ++f) {
      if (o.interiors[f].empty()) continue;
      if (rule == IncidenceRule::lenient && shares_endpoint(h.edges[e], h.edges[f])) continue;
      best = std::min(best, min_over(o.interior_dist[e], o.interiors[f]));
    }
  }
  return std::min(best - 1, diam);
}

}  // namespace

Report verify_fat_embedding(const Graph& g, const FatEmbedding& emb, IncidenceRule rule) {
  Report r;
  r.check = "fat_embedding";
  r.params = {{"pattern", emb.pattern.name}, {"M", emb.fatness}, {"incidence", to_string(rule)}};
  r.notes.push_back("incidence rule '" + to_string(rule) +
                    "': a path is exempt from its endpoint branch sets" +
                    (rule == IncidenceRule::strict        ? std::string(" only")
                     : rule == IncidenceRule::lenient     ? std::string(" and from paths sharing a pattern vertex")
                                                          : std::string(" and, near a shared branch set, from paths "
                                                                        "sharing that pattern vertex")));
  if (!check_structure(g, emb, r)) {
    r.details["achieved_fatness"] = nullptr;
    return r;
  }
  const Objects o = build_objects(g, emb);
  bool valid = true;
  check_distances(g, emb, o, rule, emb.fatness, &r, &valid);
  const auto achieved = achieved_from_objects(g, emb, o, rule);
  r.details["achieved_fatness"] = achieved ? Json(*achieved) : Json(nullptr);
  return r;
}

std::optional<int> achieved_fatness(const Graph& g, const FatEmbedding& emb, IncidenceRule rule) {
  Report scratch;
  if (!check_structure(g, emb, scratch)) return std::nullopt;
  return achieved_from_objects(g, emb, build_objects(g, emb), rule);
}

}  // namespace coarse
