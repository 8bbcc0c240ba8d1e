#include "coarse/skeleton.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "coarse/metric.hpp"

namespace coarse {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

Json params_json(const Skeleton& s) {
  return {{"lambda", s.params.lambda}, {"k", s.params.k}, {"vertices", s.base.vertex_count()},
          {"blocks", s.block_count()}};
}

// All-pairs table for the quotient, which is at most as large as the base.
std::vector<std::vector<int>> quotient_rows(const Graph& q) {
  std::vector<std::vector<int>> rows(idx(q.vertex_count()));
  for (Vertex b = 0; b < q.vertex_count(); ++b) rows[idx(b)] = bfs_distances(q, b);
  return rows;
}

}  // namespace

int layer_index(int d, int lambda) {
  if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  if (d < 0) throw std::invalid_argument("distance must be >= 0");
  if (d == 0) return -1;
  return (d - 1) / lambda;
}

VertexSet Skeleton::block_set(int b) const {
  return VertexSet(base.vertex_count(), std::span<const Vertex>(blocks.at(idx(b))));
}

VertexSet Skeleton::preimage(const VertexSet& quotient_vertices) const {
  VertexSet out(base.vertex_count());
  quotient_vertices.for_each([&](Vertex b) {
    for (Vertex v : blocks.at(idx(b))) out.insert(v);
  });
  return out;
}

Skeleton build_skeleton(const Graph& g, SkeletonParams params) {
  if (params.lambda < 1 || params.k < 1) throw std::invalid_argument("skeleton needs lambda >= 1 and k >= 1");
  const Vertex root = g.root_or_throw();
  const int n = g.vertex_count();
  Skeleton s;
  s.base = g;
  s.params = params;
  s.depth = bfs_distances(g, root);
  s.layer_of.resize(idx(n));
  int max_layer = -1;
  for (Vertex v = 0; v < n; ++v) {
    s.layer_of[idx(v)] = layer_index(s.depth[idx(v)], params.lambda);
    max_layer = std::max(max_layer, s.layer_of[idx(v)]);
  }
  std::vector<VertexSet> layers(idx(max_layer + 2), VertexSet(n));
  for (Vertex v = 0; v < n; ++v) layers[idx(s.layer_of[idx(v)] + 1)].insert(v);

  s.block_of.assign(idx(n), -1);
  for (int li = 0; li < static_cast<int>(layers.size()); ++li) {
    // m_connected_components orders pieces by smallest member.
    for (auto& piece : m_connected_components(g, layers[idx(li)], params.k)) {
      const int id = static_cast<int>(s.blocks.size());
      for (Vertex v : piece) s.block_of[idx(v)] = id;
      s.blocks.push_back(std::move(piece));
      s.block_layer.push_back(li - 1);
    }
  }
  std::vector<Edge> qedges;
  for (auto [u, v] : g.edges()) {
    const int a = s.block_of[idx(u)];
    const int b = s.block_of[idx(v)];
    if (a != b) qedges.emplace_back(a, b);
  }
  s.quotient = Graph::from_edges_dedup(s.block_count(), std::move(qedges), s.block_of[idx(root)]);
  return s;
}

Report check_skeleton_facts(const Skeleton& s) {
  Report r;
  r.check = "skeleton_facts";
  r.params = params_json(s);
  const Graph& g = s.base;
  const Graph& q = s.quotient;
  Json facts = Json::object();
  auto verdict = [&](const char* name, bool ok, Json witness) {
    facts[name] = ok;
    if (!ok) r.fail({{"fact", name}, {"detail", std::move(witness)}});
  };

  // 1. bipartite: every quotient edge joins consecutive layers, and a BFS
  //    2-colouring of the quotient has no monochromatic edge.
  {
    bool ok = true;
    Json w = nullptr;
    for (auto [a, b] : q.edges()) {
      if (std::abs(s.block_layer[idx(a)] - s.block_layer[idx(b)]) != 1) {
        ok = false;
        w = {{"edge", {a, b}}, {"layers", {s.block_layer[idx(a)], s.block_layer[idx(b)]}}};
        break;
      }
    }
    if (ok) {
      auto dist = bfs_distances(q, 0);
      for (auto [a, b] : q.edges()) {
        if (dist[idx(a)] % 2 == dist[idx(b)] % 2) {
          ok = false;
          w = {{"edge", {a, b}}, {"reason", "odd cycle"}};
          break;
        }
      }
    }
    verdict("bipartite", ok, w);
  }
  // 2. connected
  {
    auto dist = bfs_distances(q, q.root().value_or(0));
    auto it = std::find(dist.begin(), dist.end(), kUnreached);
    verdict("connected", it == dist.end(),
            it == dist.end() ? Json(nullptr) : Json({{"unreached_block", it - dist.begin()}}));
  }
  // 3. simple: no loops or repeated edges, and no base edge joins two
  //    distinct blocks of one layer (which would need a loop-free multi-edge).
  {
    bool ok = true;
    Json w = nullptr;
    for (Vertex b = 0; b < q.vertex_count() && ok; ++b) {
      auto nb = q.neighbors(b);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] == b || (i > 0 && nb[i] == nb[i - 1])) {
          ok = false;
          w = {{"block", b}};
          break;
        }
      }
    }
    for (auto [u, v] : g.edges()) {
      if (!ok) break;
      const int a = s.block_of[idx(u)];
      const int b = s.block_of[idx(v)];
      if (a != b && s.block_layer[idx(a)] == s.block_layer[idx(b)]) {
        ok = false;
        w = {{"base_edge", {u, v}}, {"blocks", {a, b}}};
      }
    }
    verdict("simple", ok, w);
  }
  // 4. every quotient edge is backed by a base edge, and vice versa
  {
    std::set<Edge> crossing;
    for (auto [u, v] : g.edges()) {
      int a = s.block_of[idx(u)];
      int b = s.block_of[idx(v)];
      if (a == b) continue;
      crossing.emplace(std::min(a, b), std::max(a, b));
    }
    bool ok = true;
    Json w = nullptr;
    for (auto e : q.edges()) {
      if (!crossing.count(e)) {
        ok = false;
        w = {{"unbacked_edge", {e.first, e.second}}};
        break;
      }
    }
    if (ok && crossing.size() != q.edge_count()) {
      ok = false;
      w = {{"reason", "base edge between blocks without a quotient edge"}};
    }
    verdict("edges_backed", ok, w);
  }
  // 5. every quotient vertex has a nonempty preimage
  {
    bool ok = static_cast<int>(s.blocks.size()) == q.vertex_count();
    Json w = nullptr;
    for (int b = 0; b < s.block_count() && ok; ++b) {
      if (s.blocks[idx(b)].empty()) {
        ok = false;
        w = {{"empty_block", b}};
      }
    }
    verdict("vertices_backed", ok, w);
  }
  r.details["facts"] = facts;

  // Not one of the five facts: quotient depth of each block is layer + 1.
  auto qdist = bfs_distances(q, q.root().value_or(0));
  Json mismatch = nullptr;
  for (int b = 0; b < s.block_count(); ++b) {
    if (qdist[idx(b)] != s.block_layer[idx(b)] + 1) {
      mismatch = {{"block", b}, {"quotient_depth", qdist[idx(b)]}, {"layer", s.block_layer[idx(b)]}};
      break;
    }
  }
  r.details["quotient_depth_is_layer_plus_one"] = mismatch.is_null();
  if (!mismatch.is_null()) r.details["quotient_depth_mismatch"] = mismatch;
  return r;
}

BlockDiameter max_block_diameter(const Skeleton& s) {
  BlockDiameter out;
  for (int b = 0; b < s.block_count(); ++b) {
    const int d = s.blocks[idx(b)].size() <= 1 ? 0 : ambient_diameter(s.base, s.block_set(b));
    if (out.block < 0 || d > out.diam) {
      out.diam = d;
      out.block = b;
    }
  }
  out.scale = out.diam + 1;
  return out;
}

Report verify_natural_map_qi(const Skeleton& s, const SamplingOptions& opts) {
  Report r;
  r.check = "natural_map_qi";
  r.params = params_json(s);
  const auto bd = max_block_diameter(s);
  const long long m = bd.scale;
  r.params["M"] = m;
  r.params["block_diameter"] = bd.diam;
  auto hist = collect_pair_distances(s.base, s.quotient, s.block_of, opts);
  r.mode = hist.mode;
  if (hist.mode == "sampled") r.seed = hist.seed;
  long long lower_violations = 0;
  long long upper_violations = 0;
  long long literal_violations = 0;  // same inequality with M = max(diam, 1)
  Json literal_witness = nullptr;
  const long long literal_m = std::max(bd.diam, 1);
  for (const auto& [key, cell] : hist.cells) {
    const long long d = key.first;
    const long long dq = key.second;
    if (dq > d) {
      lower_violations += static_cast<long long>(cell.count);
      r.fail({{"x", cell.x}, {"y", cell.y}, {"d", d}, {"d_quotient", dq}, {"inequality", "d_quotient <= d"}});
    }
    if (d > m * dq + 2 * m) {
      upper_violations += static_cast<long long>(cell.count);
      r.fail({{"x", cell.x}, {"y", cell.y}, {"d", d}, {"d_quotient", dq}, {"inequality", "d <= M d_quotient + 2M"}});
    }
    if (d > literal_m * dq + 2 * literal_m) {
      literal_violations += static_cast<long long>(cell.count);
      if (literal_witness.is_null()) literal_witness = {{"x", cell.x}, {"y", cell.y}, {"d", d}, {"d_quotient", dq}};
    }
  }
  const auto qi = measure_distortion(hist);
  r.details["pairs"] = hist.pairs;
  r.details["lower_violations"] = lower_violations;
  r.details["upper_violations"] = upper_violations;
  r.details["constants"] = {{"a", m}, {"b", 2 * m}};
  r.details["tightest"] = qi.to_json();
  r.details["literal_scale"] = literal_m;
  r.details["literal_scale_violations"] = literal_violations;
  if (!literal_witness.is_null()) r.details["literal_scale_witness"] = literal_witness;
  r.notes.push_back("M = max block diameter + 1; M = max(diameter, 1) is reported separately");
  return r;
}

Report check_no_edge_disjointness(const Skeleton& s) {
  Report r;
  r.check = "no_edge_disjointness";
  r.params = params_json(s);
  const int m = std::min(s.params.lambda, s.params.k);
  r.params["M"] = m;
  long long pairs = 0;
  long long boundary = 0;
  const Graph& q = s.quotient;
  for (int a = 0; a < s.block_count(); ++a) {
    auto dist = multi_source_distances(s.base, s.block_set(a), m);
    std::map<int, int> closest;  // block -> min distance within the cap
    for (Vertex v = 0; v < s.base.vertex_count(); ++v) {
      const int d = dist[idx(v)];
      if (d == kUnreached) continue;
      const int b = s.block_of[idx(v)];
      if (b <= a) continue;
      auto it = closest.find(b);
      if (it == closest.end() || d < it->second) closest[b] = d;
    }
    for (auto [b, d] : closest) {
      if (q.has_edge(a, b)) continue;
      ++pairs;
      if (d == m) ++boundary;
      if (d < m) r.fail({{"blocks", {a, b}}, {"distance", d}, {"required", m}});
    }
  }
  r.details["close_nonadjacent_pairs"] = pairs;
  r.details["boundary_hits"] = boundary;
  r.notes.push_back("asserts preimage distance >= min(lambda,k); pairs at exactly that distance are counted as boundary hits");
  return r;
}

Report check_distance_expansion(const Skeleton& s, int n) {
  if (n < 2) throw std::invalid_argument("check_distance_expansion requires n >= 2");
  Report r;
  r.check = "distance_expansion";
  r.params = params_json(s);
  r.params["n"] = n;
  const int m = std::min(s.params.lambda, s.params.k);
  const int need = m * (n - 1);
  r.params["required_distance"] = need;
  long long checked = 0;
  for (int a = 0; a < s.block_count(); ++a) {
    auto qd = bfs_distances(s.quotient, a);
    // Only base vertices closer than `need` can violate.
    auto dist = multi_source_distances(s.base, s.block_set(a), need > 0 ? need - 1 : 0);
    for (Vertex v = 0; v < s.base.vertex_count(); ++v) {
      const int d = dist[idx(v)];
      if (d == kUnreached) continue;
      const int b = s.block_of[idx(v)];
      if (b <= a || qd[idx(b)] < n) continue;
      ++checked;
      r.fail({{"blocks", {a, b}}, {"quotient_distance", qd[idx(b)]}, {"distance", d}, {"required", need}});
    }
  }
  r.details["close_far_pairs"] = checked;
  return r;
}

ComposedSkeleton compose_skeleton(const Skeleton& s, int n, int k2) {
  ComposedSkeleton c;
  c.outer = build_skeleton(s.quotient, {n, k2});
  c.block_of.resize(s.block_of.size());
  for (std::size_t v = 0; v < s.block_of.size(); ++v) {
    c.block_of[v] = c.outer.block_of[idx(s.block_of[v])];
  }
  return c;
}

Report verify_composition_identity(const Graph& g, int lambda, int k, int n) {
  Report r;
  r.check = "composition_identity";
  r.params = {{"lambda", lambda}, {"k", k}, {"n", n}, {"vertices", g.vertex_count()}};
  const Skeleton direct = build_skeleton(g, {n * lambda, k});
  const Skeleton inner = build_skeleton(g, {lambda, k});
  const ComposedSkeleton composed = compose_skeleton(inner, n, 1);
  r.details["regime"] = k <= lambda ? "k<=lambda" : "lambda<k";

  // Partition equality via a label bijection.
  const int nv = g.vertex_count();
  std::vector<int> fwd(idx(direct.block_count()), -1);
  std::vector<int> bwd(idx(composed.outer.block_count()), -1);
  std::vector<Vertex> rep_direct(idx(direct.block_count()), -1);
  std::vector<Vertex> rep_comp(idx(composed.outer.block_count()), -1);
  bool ok = true;
  for (Vertex v = 0; v < nv && ok; ++v) {
    const int a = direct.block_of[idx(v)];
    const int b = composed.block_of[idx(v)];
    if (fwd[idx(a)] < 0 && bwd[idx(b)] < 0) {
      fwd[idx(a)] = b;
      bwd[idx(b)] = a;
      rep_direct[idx(a)] = v;
      rep_comp[idx(b)] = v;
      continue;
    }
    if (fwd[idx(a)] == b && bwd[idx(b)] == a) continue;
    ok = false;
    // v shares a direct block with some earlier u but not its composed block,
    // or the other way around.
    Vertex u = fwd[idx(a)] >= 0 ? rep_direct[idx(a)] : rep_comp[idx(b)];
    const bool same_direct = direct.block_of[idx(u)] == a;
    r.fail({{"x", u},
            {"y", v},
            {"same_block_direct", same_direct},
            {"same_block_composed", composed.block_of[idx(u)] == b}});
  }
  r.details["partition_equal"] = ok;
  if (ok) {
    std::set<Edge> mapped;
    for (auto [a, b] : direct.quotient.edges()) {
      int x = fwd[idx(a)];
      int y = fwd[idx(b)];
      mapped.emplace(std::min(x, y), std::max(x, y));
    }
    auto other = composed.outer.quotient.edges();
    std::set<Edge> theirs(other.begin(), other.end());
    const bool edges_ok = mapped == theirs;
    r.details["edges_equal"] = edges_ok;
    if (!edges_ok) {
      std::vector<Edge> diff;
      std::set_symmetric_difference(mapped.begin(), mapped.end(), theirs.begin(), theirs.end(),
                                    std::back_inserter(diff));
      r.fail({{"edge_mismatch", {diff.front().first, diff.front().second}}});
    }
  }
  r.details["blocks_direct"] = direct.block_count();
  r.details["blocks_composed"] = composed.outer.block_count();
  if (k > lambda) r.notes.push_back("lambda < k: failures here are findings, the identity is not claimed for this regime");
  return r;
}

Report check_contraction_bounds(const Skeleton& s, const std::vector<int>& big_ns) {
  Report r;
  r.check = "contraction_bounds";
  r.params = params_json(s);
  r.params["big_n"] = big_ns;
  const ComposedSkeleton c = compose_skeleton(s, 2, 2);
  const Skeleton& t = c.outer;  // blocks of t partition the vertices of s.quotient
  const Graph& sq = s.quotient;
  auto trows = quotient_rows(t.quotient);
  int max_need = 3;
  for (int n : big_ns) max_need = std::max(max_need, n + n / 2 + 1);
  long long small_pairs = 0;
  long long small_literal_pairs = 0;
  std::map<int, long long> big_pairs;
  bool floor_taken = false;
  for (int n : big_ns) {
    if (n % 2 == 1) floor_taken = true;
  }
  // Minimum s-level distance between the preimages of every pair of
  // t-vertices, capped at max_need.
  for (int a = 0; a < t.block_count(); ++a) {
    auto dist = multi_source_distances(sq, t.block_set(a), max_need);
    std::map<int, int> closest;
    for (Vertex v = 0; v < sq.vertex_count(); ++v) {
      const int d = dist[idx(v)];
      if (d == kUnreached) continue;
      const int b = t.block_of[idx(v)];
      if (b <= a) continue;
      auto it = closest.find(b);
      if (it == closest.end() || d < it->second) closest[b] = d;
    }
    for (int b = a + 1; b < t.block_count(); ++b) {
      const int dt = trows[idx(a)][idx(b)];
      auto it = closest.find(b);
      const int ds = it == closest.end() ? max_need + 1 : it->second;  // beyond the cap
      if (dt >= 2) {
        ++small_pairs;
        if (ds < 3) {
          r.fail({{"case", "small"}, {"t_vertices", {a, b}}, {"t_distance", dt}, {"s_distance", ds}, {"required", 3}});
        }
      }
      if (dt > 2) {
        ++small_literal_pairs;
        if (ds <= 3) {
          r.fail({{"case", "small-literal"}, {"t_vertices", {a, b}}, {"t_distance", dt}, {"s_distance", ds},
                  {"required", "> 3"}});
        }
      }
      for (int n : big_ns) {
        if (dt <= n) continue;
        ++big_pairs[n];
        const int need = n + n / 2;
        if (ds <= need) {
          r.fail({{"case", "big"}, {"n", n}, {"t_vertices", {a, b}}, {"t_distance", dt}, {"s_distance", ds},
                  {"required", "> " + std::to_string(need)}});
        }
      }
    }
  }
  r.details["small_pairs"] = small_pairs;
  r.details["small_literal_pairs"] = small_literal_pairs;
  Json bp = Json::object();
  for (auto [n, c2] : big_pairs) bp[std::to_string(n)] = c2;
  r.details["big_pairs"] = bp;
  if (floor_taken) r.notes.push_back("odd n uses n + floor(n/2)");
  return r;
}

Json skeleton_to_json(const Skeleton& s) {
  Json j;
  j["params"] = {{"lambda", s.params.lambda}, {"k", s.params.k}};
  j["layer_of"] = s.layer_of;
  j["block_of"] = s.block_of;
  Json q;
  q["vertex_count"] = s.quotient.vertex_count();
  Json edges = Json::array();
  for (auto [u, v] : s.quotient.edges()) edges.push_back({u, v});
  q["edges"] = edges;
  q["root"] = s.quotient.root() ? Json(*s.quotient.root()) : Json(nullptr);
  j["quotient"] = q;
  return j;
}

}  // namespace coarse
