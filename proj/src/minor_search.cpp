#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "coarse/fat_minor.hpp"
#include "coarse/metric.hpp"
#include "coarse/rng.hpp"
#include "coarse/subsets.hpp"

namespace coarse {

SearchMode parse_search_mode(const std::string& s) {
  if (s == "exhaustive") return SearchMode::exhaustive;
  if (s == "heuristic") return SearchMode::heuristic;
  throw std::invalid_argument("unknown search mode: " + s);
}

Json MinorSearchResult::to_json() const {
  Json j;
  j["found"] = embedding.has_value();
  j["complete"] = complete;
  j["mode"] = mode;
  j["nodes"] = nodes;
  j["core_vertices"] = core_vertices;
  j["embedding"] = embedding ? embedding->to_json() : Json(nullptr);
  return j;
}

Json FatnessProbe::to_json() const {
  Json j;
  j["value"] = value ? Json(*value) : Json(nullptr);
  j["exact"] = exact;
  j["trials"] = trials;
  j["embedding"] = best ? best->to_json() : Json(nullptr);
  return j;
}

namespace {

// Graph left after repeatedly deleting vertices of degree <= 1, relabelled,
// with the map back. Such vertices never lie on a branch path interior and
// can be dropped from branch sets when every pattern vertex has degree >= 2;
// distances among the kept vertices are unchanged.
struct Core {
  std::optional<Graph> graph;
  std::vector<Vertex> to_original;
};

Core pendant_core(const Graph& g, bool prune) {
  const int n = g.vertex_count();
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  if (prune) {
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
      deg[static_cast<std::size_t>(v)] = g.degree(v);
      if (deg[static_cast<std::size_t>(v)] <= 1) queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      if (gone[static_cast<std::size_t>(v)]) continue;
      gone[static_cast<std::size_t>(v)] = 1;
      for (Vertex w : g.neighbors(v)) {
        if (gone[static_cast<std::size_t>(w)]) continue;
        if (--deg[static_cast<std::size_t>(w)] <= 1) queue.push_back(w);
      }
    }
  }
  Core c;
  std::vector<Vertex> to_core(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    if (gone[static_cast<std::size_t>(v)]) continue;
    to_core[static_cast<std::size_t>(v)] = static_cast<Vertex>(c.to_original.size());
    c.to_original.push_back(v);
  }
  if (c.to_original.empty()) return c;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (gone[static_cast<std::size_t>(u)] || gone[static_cast<std::size_t>(v)]) continue;
    edges.emplace_back(to_core[static_cast<std::size_t>(u)], to_core[static_cast<std::size_t>(v)]);
  }
  c.graph = Graph::from_edges(static_cast<int>(c.to_original.size()), edges);
  return c;
}

FatEmbedding relabel(const FatEmbedding& e, const std::vector<Vertex>& to_original) {
  FatEmbedding out = e;
  for (auto& s : out.branch_sets) {
    for (auto& v : s) v = to_original[static_cast<std::size_t>(v)];
    std::sort(s.begin(), s.end());
  }
  for (auto& p : out.branch_paths)
    for (auto& v : p) v = to_original[static_cast<std::size_t>(v)];
  return out;
}

// Pattern vertices that some automorphism maps to vertex 0.
std::vector<int> orbit_of_zero(const PatternGraph& h) {
  const int k = h.vertex_count;
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> in_orbit(static_cast<std::size_t>(k), 0);
  do {
    bool automorphism = true;
    for (int u = 0; u < k && automorphism; ++u)
      for (int v = u + 1; v < k && automorphism; ++v)
        automorphism = h.multiplicity(u, v) == h.multiplicity(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    if (automorphism) in_orbit[static_cast<std::size_t>(perm[0])] = 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<int> out;
  for (int v = 0; v < k; ++v)
    if (in_orbit[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

class BudgetExceeded {};

int lowest(Mask m) { return m ? __builtin_ctzll(m) : 64; }

// ---- exhaustive, m = 0: connected partitions --------------------------------
//
// A plain minor model can absorb every path interior and every unused vertex
// into an adjacent branch set, so it suffices to try partitions of the whole
// vertex set into |H| connected blocks and ask whether the block multigraph
// contains H.
class PartitionSearch {
 public:
  PartitionSearch(const Graph& g, const PatternGraph& h, std::uint64_t budget)
      : g_(g), h_(h), mg_(g), budget_(budget), k_(h.vertex_count) {
    auto subsets = connected_subsets(mg_, static_cast<std::size_t>(1) << 24);
    if (!subsets) throw std::invalid_argument("core too large for exhaustive search");
    subsets_ = std::move(*subsets);
    need_.assign(static_cast<std::size_t>(k_ * k_), 0);
    for (auto [u, v] : h_.edges) {
      ++need_[static_cast<std::size_t>(u * k_ + v)];
      ++need_[static_cast<std::size_t>(v * k_ + u)];
    }
  }

  std::uint64_t nodes = 0;

  std::optional<FatEmbedding> run() {
    const Mask all = mg_.n == 64 ? ~Mask{0} : bit(mg_.n) - 1;
    if (mg_.n < k_) return std::nullopt;
    if (rec(all, 0)) return build();
    return std::nullopt;
  }

 private:
  bool rec(Mask remaining, int depth) {
    if (budget_ && ++nodes > budget_) throw BudgetExceeded{};
    if (!budget_) ++nodes;
    if (depth == k_ - 1) {
      if (!mg_.connected(remaining)) return false;
      blocks_[static_cast<std::size_t>(depth)] = remaining;
      return blocks_contain_pattern();
    }
    const Mask low = remaining & (~remaining + 1);
    const int left = k_ - depth - 1;  // blocks still to place after this one
    for (Mask s : subsets_) {
      if (!(s & low) || (s & ~remaining)) continue;
      if (popcount(remaining & ~s) < left) continue;
      blocks_[static_cast<std::size_t>(depth)] = s;
      if (rec(remaining & ~s, depth + 1)) return true;
    }
    return false;
  }

  int edges_between(Mask a, Mask b) const {
    int c = 0;
    for (Vertex v : mask_members(a)) c += popcount(mg_.adj[static_cast<std::size_t>(v)] & b);
    return c;
  }

  bool blocks_contain_pattern() {
    std::vector<int> count(static_cast<std::size_t>(k_ * k_), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = i + 1; j < k_; ++j) {
        const int c = edges_between(blocks_[static_cast<std::size_t>(i)], blocks_[static_cast<std::size_t>(j)]);
        count[static_cast<std::size_t>(i * k_ + j)] = count[static_cast<std::size_t>(j * k_ + i)] = c;
      }
    perm_.resize(static_cast<std::size_t>(k_));
    std::iota(perm_.begin(), perm_.end(), 0);  // pattern vertex -> block
    do {
      bool ok = true;
      for (int u = 0; u < k_ && ok; ++u)
        for (int v = u + 1; v < k_ && ok; ++v)
          ok = need_[static_cast<std::size_t>(u * k_ + v)] <=
               count[static_cast<std::size_t>(perm_[static_cast<std::size_t>(u)] * k_ + perm_[static_cast<std::size_t>(v)])];
      if (ok) return true;
    } while (std::next_permutation(perm_.begin(), perm_.end()));
    return false;
  }

  FatEmbedding build() const {
    FatEmbedding e;
    e.pattern = h_;
    e.fatness = 0;
    for (int v = 0; v < k_; ++v) e.branch_sets.push_back(mask_members(blocks_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(v)])]));
    // distinct edges per pattern pair, in order
    std::vector<int> used(static_cast<std::size_t>(k_ * k_), 0);
    for (auto [u, v] : h_.edges) {
      const Mask bu = blocks_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(u)])];
      const Mask bv = blocks_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(v)])];
      int skip = used[static_cast<std::size_t>(std::min(u, v) * k_ + std::max(u, v))]++;
      bool placed = false;
      for (Vertex a : mask_members(bu)) {
        for (Vertex b : mask_members(mg_.adj[static_cast<std::size_t>(a)] & bv)) {
          if (skip-- == 0) {
            e.branch_paths.push_back({a, b});
            placed = true;
            break;
          }
        }
        if (placed) break;
      }
    }
    return e;
  }

  const Graph& g_;
  const PatternGraph& h_;
  MaskGraph mg_;
  std::uint64_t budget_;
  int k_;
  std::vector<Mask> subsets_;
  std::vector<int> need_;
  Mask blocks_[6] = {0, 0, 0, 0, 0, 0};
  std::vector<int> perm_;
};

// ---- exhaustive, any m: branch sets then path routing ------------------------
//
// Branch sets range over connected subsets (smallest first), pairwise
// m-disjoint, with the smallest vertex of set 0 below that of every set in
// its automorphism orbit. In an embedding of least total size every non-cut
// vertex of a branch set is a path end, so a set for a pattern vertex of
// degree d has at most d non-cut vertices. Paths are then routed one pattern edge at a time
// through the vertices that keep every non-exempt pair m-disjoint. Only
// paths without shortcuts are tried: no chords, and only the first (last)
// interior vertex touches the start (end) set. Any embedding can be reduced
// to this form by shortcutting, which only shrinks interiors.
class RoutingSearch {
 public:
  RoutingSearch(const Graph& g, const PatternGraph& h, int m, std::uint64_t budget)
      : h_(h), m_(m), mg_(g, m), budget_(budget), k_(h.vertex_count) {
    int max_deg = 1;
    for (int v = 0; v < k_; ++v) max_deg = std::max(max_deg, h_.degree(v));
    auto subsets = few_noncut_subsets(mg_, max_deg, static_cast<std::size_t>(1) << 22);
    if (!subsets) throw std::invalid_argument("core too rich for exhaustive search");
    subsets_ = std::move(*subsets);
    for (Mask s : subsets_) noncut_.push_back(noncut_count(mg_, s));
    all_ = mg_.n == 64 ? ~Mask{0} : bit(mg_.n) - 1;
    for (Mask s : subsets_) subset_ball_.push_back(mg_.closed_ball_of(s, m_));
    const auto orbit = orbit_of_zero(h_);
    in_orbit_.assign(static_cast<std::size_t>(k_), 0);
    for (int v : orbit) in_orbit_[static_cast<std::size_t>(v)] = 1;
    // route parallel edges consecutively
    order_.resize(h_.edges.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      auto ka = std::minmax(h_.edges[static_cast<std::size_t>(a)].first, h_.edges[static_cast<std::size_t>(a)].second);
      auto kb = std::minmax(h_.edges[static_cast<std::size_t>(b)].first, h_.edges[static_cast<std::size_t>(b)].second);
      return ka < kb;
    });
    sets_.assign(static_cast<std::size_t>(k_), 0);
    set_ball_.assign(static_cast<std::size_t>(k_), 0);
    interior_.assign(h_.edges.size(), 0);
    interior_ball_.assign(h_.edges.size(), 0);
    routed_.assign(h_.edges.size(), 0);
    paths_.assign(h_.edges.size(), {});
  }

  std::uint64_t nodes = 0;

  std::optional<FatEmbedding> run() {
    if (choose(0)) return build();
    return std::nullopt;
  }

 private:
  void tick() {
    ++nodes;
    if (budget_ && nodes > budget_) throw BudgetExceeded{};
  }

  bool choose(int i) {
    if (i == k_) {
      used_sets_ = 0;
      for (Mask s : sets_) used_sets_ |= s;
      return route(0);
    }
    Mask used = 0, near = 0;
    for (int j = 0; j < i; ++j) {
      used |= sets_[static_cast<std::size_t>(j)];
      near |= set_ball_[static_cast<std::size_t>(j)];
    }
    const int deg = h_.degree(i);
    for (std::size_t idx = 0; idx < subsets_.size(); ++idx) {
      const Mask s = subsets_[idx];
      if ((s & (used | near)) || noncut_[idx] > deg) continue;
      if (i > 0 && in_orbit_[static_cast<std::size_t>(i)] && lowest(s) < lowest(sets_[0])) continue;
      if (m_ >= 1 && popcount(mg_.neighbors_of(s) & ~s & ~used) < deg) continue;
      tick();
      sets_[static_cast<std::size_t>(i)] = s;
      set_ball_[static_cast<std::size_t>(i)] = subset_ball_[idx];
      if (choose(i + 1)) return true;
    }
    return false;
  }

  // Vertices available to the interior of pattern edge e given what is placed.
  Mask allowed_for(int e) const {
    const auto [u, v] = h_.edges[static_cast<std::size_t>(e)];
    Mask blocked = used_sets_;
    for (int w = 0; w < k_; ++w)
      if (w != u && w != v) blocked |= set_ball_[static_cast<std::size_t>(w)];
    for (std::size_t f = 0; f < h_.edges.size(); ++f)
      if (routed_[f]) blocked |= interior_ball_[f];
    return all_ & ~blocked;
  }

  bool reachable(int e) const {
    const auto [u, v] = h_.edges[static_cast<std::size_t>(e)];
    const Mask su = sets_[static_cast<std::size_t>(u)], sv = sets_[static_cast<std::size_t>(v)];
    if (m_ == 0 && (mg_.neighbors_of(su) & sv)) return true;
    const Mask allowed = allowed_for(e);
    const Mask start = mg_.neighbors_of(su) & allowed;
    return (mg_.reach(start, allowed) & mg_.neighbors_of(sv)) != 0;
  }

  bool route(std::size_t j) {
    if (j == order_.size()) return true;
    for (std::size_t t = j; t < order_.size(); ++t)
      if (!reachable(order_[t])) return false;
    const int e = order_[j];
    const auto [u, v] = h_.edges[static_cast<std::size_t>(e)];
    su_ = sets_[static_cast<std::size_t>(u)];
    sv_ = sets_[static_cast<std::size_t>(v)];
    // parallel copies of one pattern edge are interchangeable: keys increase
    long long min_key = -1;
    if (j > 0) {
      const int prev = order_[j - 1];
      if (std::minmax(h_.edges[static_cast<std::size_t>(prev)].first, h_.edges[static_cast<std::size_t>(prev)].second) ==
          std::minmax(u, v))
        min_key = key_[static_cast<std::size_t>(prev)];
    }
    key_.resize(h_.edges.size(), -1);
    if (m_ == 0) {
      // direct edges first; key = a * 64 + b
      for (Vertex a : mask_members(su_)) {
        for (Vertex b : mask_members(mg_.adj[static_cast<std::size_t>(a)] & sv_)) {
          const long long key = a * 64LL + b;
          if (key <= min_key) continue;
          tick();
          paths_[static_cast<std::size_t>(e)] = {a, b};
          interior_[static_cast<std::size_t>(e)] = 0;
          interior_ball_[static_cast<std::size_t>(e)] = 0;
          key_[static_cast<std::size_t>(e)] = key;
          routed_[static_cast<std::size_t>(e)] = 1;
          if (route(j + 1)) return true;
          routed_[static_cast<std::size_t>(e)] = 0;
          su_ = sets_[static_cast<std::size_t>(u)];
          sv_ = sets_[static_cast<std::size_t>(v)];
        }
      }
    }
    const Mask allowed = allowed_for(e);
    for (Vertex s : mask_members(mg_.neighbors_of(su_) & allowed)) {
      seq_.assign(1, s);
      if (extend(j, e, s, bit(s), allowed, min_key)) return true;
      su_ = sets_[static_cast<std::size_t>(u)];
      sv_ = sets_[static_cast<std::size_t>(v)];
    }
    return false;
  }

  bool extend(std::size_t j, int e, Vertex cur, Mask path, Mask allowed, long long min_key) {
    tick();
    if (mg_.adj[static_cast<std::size_t>(cur)] & sv_) {
      const long long key = 64LL * 64LL + lowest(path);
      if (key <= min_key) return false;
      const auto [u, v] = h_.edges[static_cast<std::size_t>(e)];
      const Vertex a = lowest(mg_.adj[static_cast<std::size_t>(seq_.front())] & sets_[static_cast<std::size_t>(u)]);
      const Vertex b = lowest(mg_.adj[static_cast<std::size_t>(cur)] & sets_[static_cast<std::size_t>(v)]);
      std::vector<Vertex> full{a};
      full.insert(full.end(), seq_.begin(), seq_.end());
      full.push_back(b);
      paths_[static_cast<std::size_t>(e)] = std::move(full);
      interior_[static_cast<std::size_t>(e)] = path;
      interior_ball_[static_cast<std::size_t>(e)] = mg_.closed_ball_of(path, m_);
      key_[static_cast<std::size_t>(e)] = key;
      routed_[static_cast<std::size_t>(e)] = 1;
      const auto saved_seq = seq_;
      if (route(j + 1)) return true;
      seq_ = saved_seq;
      routed_[static_cast<std::size_t>(e)] = 0;
      su_ = sets_[static_cast<std::size_t>(u)];
      sv_ = sets_[static_cast<std::size_t>(v)];
      return false;
    }
    const Mask earlier = path & ~bit(cur);
    for (Vertex w : mask_members(mg_.adj[static_cast<std::size_t>(cur)] & allowed & ~path)) {
      if (mg_.adj[static_cast<std::size_t>(w)] & (earlier | su_)) continue;
      seq_.push_back(w);
      if (extend(j, e, w, path | bit(w), allowed, min_key)) return true;
      seq_.pop_back();
    }
    return false;
  }

  FatEmbedding build() const {
    FatEmbedding out;
    out.pattern = h_;
    out.fatness = m_;
    for (Mask s : sets_) out.branch_sets.push_back(mask_members(s));
    out.branch_paths = paths_;
    return out;
  }

  const PatternGraph& h_;
  int m_;
  MaskGraph mg_;
  std::uint64_t budget_;
  int k_;
  Mask all_ = 0;
  std::vector<Mask> subsets_;
  std::vector<Mask> subset_ball_;
  std::vector<int> noncut_;
  std::vector<char> in_orbit_;
  std::vector<int> order_;
  std::vector<Mask> sets_, set_ball_;
  Mask used_sets_ = 0;
  std::vector<Mask> interior_, interior_ball_;
  std::vector<char> routed_;
  std::vector<long long> key_;
  std::vector<std::vector<Vertex>> paths_;
  std::vector<Vertex> seq_;
  Mask su_ = 0, sv_ = 0;
};

// ---- heuristic: random seeds, balls, shortest-path routing -------------------

std::vector<Vertex> route_shortest(const Graph& g, const VertexSet& from, const VertexSet& to,
                                   const VertexSet& allowed, CounterRng& rng) {
  const int n = g.vertex_count();
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  std::vector<Vertex> queue;
  std::vector<Vertex> starts;
  from.for_each([&](Vertex a) {
    for (Vertex s : g.neighbors(a))
      if (allowed.contains(s) && parent[static_cast<std::size_t>(s)] == -2) {
        parent[static_cast<std::size_t>(s)] = a;
        starts.push_back(s);
      }
  });
  rng.shuffle(starts);
  queue = starts;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex b : g.neighbors(x)) {
      if (to.contains(b)) {
        std::vector<Vertex> path{b};
        Vertex c = x;
        while (!from.contains(c)) {
          path.push_back(c);
          c = parent[static_cast<std::size_t>(c)];
        }
        path.push_back(c);
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
    std::vector<Vertex> next(g.neighbors(x).begin(), g.neighbors(x).end());
    rng.shuffle(next);
    for (Vertex w : next) {
      if (allowed.contains(w) && parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = x;
        queue.push_back(w);
      }
    }
  }
  return {};
}

std::optional<FatEmbedding> heuristic_attempt(const Graph& g, const PatternGraph& h, int m, CounterRng& rng) {
  const int n = g.vertex_count();
  const int k = h.vertex_count;
  // seeds: spread out, mixing farthest-point and random far choices
  std::vector<Vertex> seeds{static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)))};
  VertexSet seed_set(n, {seeds[0]});
  while (static_cast<int>(seeds.size()) < k) {
    const auto d = multi_source_distances(g, seed_set);
    const int far = *std::max_element(d.begin(), d.end());
    if (far <= m) return std::nullopt;
    std::vector<Vertex> pool;
    const bool farthest = rng.bernoulli(0.5);
    for (Vertex v = 0; v < n; ++v) {
      const int dv = d[static_cast<std::size_t>(v)];
      if (farthest ? dv == far : dv > m) pool.push_back(v);
    }
    const Vertex pick = pool[static_cast<std::size_t>(rng.below(pool.size()))];
    seeds.push_back(pick);
    seed_set.insert(pick);
  }
  rng.shuffle(seeds);
  // branch sets: balls of random radius, shrunk until pairwise m-disjoint
  std::vector<int> radius(static_cast<std::size_t>(k));
  for (auto& r : radius) r = rng.uniform_int(0, m + 1);
  std::vector<VertexSet> sets;
  for (int attempt = 0;; ++attempt) {
    sets.clear();
    for (int v = 0; v < k; ++v)
      sets.push_back(neighborhood(g, VertexSet(n, {seeds[static_cast<std::size_t>(v)]}), radius[static_cast<std::size_t>(v)] + 1));
    bool ok = true;
    for (int u = 0; u < k && ok; ++u)
      for (int v = u + 1; v < k && ok; ++v)
        ok = are_m_disjoint(g, sets[static_cast<std::size_t>(u)], sets[static_cast<std::size_t>(v)], m) &&
             !sets[static_cast<std::size_t>(u)].intersects(sets[static_cast<std::size_t>(v)]);
    if (ok) break;
    bool shrunk = false;
    for (auto& r : radius)
      if (r > 0) {
        --r;
        shrunk = true;
      }
    if (!shrunk) return std::nullopt;
  }
  VertexSet used_sets(n);
  for (const auto& s : sets) used_sets |= s;
  std::vector<VertexSet> set_ball;
  for (const auto& s : sets) set_ball.push_back(neighborhood(g, s, m + 1));

  std::vector<std::size_t> order(h.edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<std::vector<Vertex>> paths(h.edges.size());
  VertexSet blocked_by_paths(n);
  std::vector<Edge> direct;
  for (std::size_t e : order) {
    const auto [u, v] = h.edges[e];
    const auto& su = sets[static_cast<std::size_t>(u)];
    const auto& sv = sets[static_cast<std::size_t>(v)];
    if (m == 0) {
      // a direct edge not used yet
      bool placed = false;
      su.for_each([&](Vertex a) {
        if (placed) return;
        for (Vertex b : g.neighbors(a)) {
          const Edge key{std::min(a, b), std::max(a, b)};
          if (sv.contains(b) && std::find(direct.begin(), direct.end(), key) == direct.end()) {
            direct.push_back(key);
            paths[e] = {a, b};
            placed = true;
            return;
          }
        }
      });
      if (placed) continue;
    }
    VertexSet allowed = VertexSet::full(n) - used_sets - blocked_by_paths;
    for (int w = 0; w < k; ++w)
      if (w != u && w != v) allowed -= set_ball[static_cast<std::size_t>(w)];
    auto p = route_shortest(g, su, sv, allowed, rng);
    if (p.empty()) return std::nullopt;
    VertexSet interior(n);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) interior.insert(p[i]);
    blocked_by_paths |= neighborhood(g, interior, m + 1);
    paths[e] = std::move(p);
  }
  FatEmbedding emb;
  emb.pattern = h;
  emb.fatness = m;
  for (const auto& s : sets) emb.branch_sets.push_back(s.members());
  emb.branch_paths = std::move(paths);
  if (!verify_fat_embedding(g, emb).holds) return std::nullopt;
  return emb;
}

}  // namespace

MinorSearchResult find_fat_minor(const Graph& g, const PatternGraph& h, int m, const MinorSearchOptions& opts) {
  if (h.vertex_count > 6) throw std::invalid_argument("patterns with more than 6 vertices are not supported");
  if (m < 0) throw std::invalid_argument("fatness must be >= 0");
  if (opts.vertex_cap > 64) throw std::invalid_argument("vertex cap cannot exceed 64");
  MinorSearchResult res;
  res.mode = opts.mode == SearchMode::exhaustive ? "exhaustive" : "heuristic";
  const Core core = pendant_core(g, h.min_degree() >= 2);
  res.core_vertices = static_cast<int>(core.to_original.size());
  if (!core.graph || core.graph->vertex_count() < h.vertex_count) {
    res.complete = true;
    return res;
  }
  const Graph& c = *core.graph;

  if (opts.mode == SearchMode::exhaustive) {
    if (c.vertex_count() > opts.vertex_cap) {
      throw std::invalid_argument("exhaustive search needs a core of at most " + std::to_string(opts.vertex_cap) +
                                  " vertices (core has " + std::to_string(c.vertex_count()) + ")");
    }
    std::optional<FatEmbedding> found;
    try {
      if (m == 0 && opts.partition_shortcut) {
        PartitionSearch s(c, h, opts.budget);
        found = s.run();
        res.nodes = s.nodes;
      } else {
        RoutingSearch s(c, h, m, opts.budget);
        try {
          found = s.run();
        } catch (const BudgetExceeded&) {
          res.nodes = s.nodes;
          throw;
        }
        res.nodes = s.nodes;
      }
      res.complete = true;
    } catch (const BudgetExceeded&) {
      res.complete = false;
      if (res.nodes == 0) res.nodes = opts.budget;
    }
    if (found) {
      res.embedding = relabel(*found, core.to_original);
      res.complete = true;
    }
  } else {
    const std::uint64_t restarts = opts.budget ? opts.budget : 200;
    for (std::uint64_t t = 0; t < restarts && !res.embedding; ++t) {
      CounterRng rng(opts.seed, t);
      ++res.nodes;
      if (auto e = heuristic_attempt(c, h, m, rng)) res.embedding = relabel(*e, core.to_original);
    }
    res.complete = res.embedding.has_value();
  }
  if (res.embedding && !verify_fat_embedding(g, *res.embedding).holds) {
    throw std::logic_error("search produced an embedding that fails verification");
  }
  return res;
}

FatnessProbe max_fatness(const Graph& g, const PatternGraph& h, int upper, const MinorSearchOptions& opts) {
  if (upper < 0) throw std::invalid_argument("upper bound must be >= 0");
  FatnessProbe probe;
  auto attempt = [&](int m) {
    auto r = find_fat_minor(g, h, m, opts);
    probe.trials.push_back({{"m", m}, {"found", r.embedding.has_value()}, {"complete", r.complete}, {"nodes", r.nodes}});
    if (!r.embedding && !r.complete) probe.exact = false;
    if (opts.mode == SearchMode::heuristic) probe.exact = false;
    return r;
  };
  auto r0 = attempt(0);
  if (!r0.embedding) return probe;
  int lo = 0;  // known feasible
  probe.best = r0.embedding;
  if (auto a = achieved_fatness(g, *r0.embedding)) lo = std::min(upper, std::max(lo, *a));
  int hi = upper + 1;  // infeasible or beyond the probe
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    auto r = attempt(mid);
    if (r.embedding) {
      lo = mid;
      if (auto a = achieved_fatness(g, *r.embedding)) lo = std::min(upper, std::max(lo, *a));
      probe.best = r.embedding;
    } else {
      hi = mid;
    }
  }
  probe.value = lo;
  if (probe.best) probe.best->fatness = lo;
  return probe;
}

}  // namespace coarse
