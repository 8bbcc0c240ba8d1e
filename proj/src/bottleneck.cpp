#include "coarse/bottleneck.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/flow.hpp"
#include "coarse/metric.hpp"
#include "coarse/rng.hpp"
#include "coarse/subsets.hpp"

namespace coarse {

EdgeStrategy parse_edge_strategy(const std::string& s) {
  if (s == "exhaustive") return EdgeStrategy::exhaustive;
  if (s == "vertex-pairs") return EdgeStrategy::vertex_pairs;
  if (s == "sampled") return EdgeStrategy::sampled;
  throw std::invalid_argument("unknown edge bottleneck strategy: " + s);
}

FatStrategy parse_fat_strategy(const std::string& s) {
  if (s == "exhaustive") return FatStrategy::exhaustive;
  if (s == "sampled") return FatStrategy::sampled;
  throw std::invalid_argument("unknown fat bottleneck strategy: " + s);
}

namespace {

Json path_list(const std::vector<std::vector<Vertex>>& paths) {
  Json out = Json::array();
  for (const auto& p : paths) out.push_back(p);
  return out;
}

// Enumerated connected subsets when the graph is small enough, else nullopt.
std::optional<std::vector<Mask>> exhaustive_universe(const Graph& g, const BottleneckOptions& opts) {
  const int n = g.vertex_count();
  if (n > 64) return std::nullopt;
  MaskGraph mg(g);
  if (n <= opts.vertex_limit) return connected_subsets(mg, static_cast<std::size_t>(1) << 20);
  return connected_subsets(mg, opts.subset_limit);
}

// Random connected set grown from `start` inside `allowed`.
VertexSet grow_connected(const Graph& g, CounterRng& rng, Vertex start, int target, const VertexSet& allowed) {
  VertexSet s(g.vertex_count(), {start});
  std::vector<Vertex> frontier;
  auto push_neighbors = [&](Vertex v) {
    for (Vertex w : g.neighbors(v))
      if (allowed.contains(w) && !s.contains(w)) frontier.push_back(w);
  };
  push_neighbors(start);
  while (static_cast<int>(s.size()) < target && !frontier.empty()) {
    const std::size_t i = static_cast<std::size_t>(rng.below(frontier.size()));
    const Vertex v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    if (s.contains(v)) continue;
    s.insert(v);
    push_neighbors(v);
  }
  return s;
}

Vertex random_member(CounterRng& rng, const VertexSet& s) {
  auto m = s.members();
  return m[static_cast<std::size_t>(rng.below(m.size()))];
}

// ---- edge bottlenecking ----------------------------------------------------

Json edge_witness(const VertexSet& x, const VertexSet& y, std::vector<std::vector<Vertex>> paths) {
  return Json{{"X", x.members()}, {"Y", y.members()}, {"paths", path_list(paths)}};
}

// Decides n = 1 by acyclicity; on a cycle, the endpoints of a non-bridge edge
// give the witness.
void edge_acyclic_shortcut(const Graph& g, Report& r) {
  r.details["exact"] = true;
  r.notes.push_back("n = 1 decided exactly: the graph is 1-edge bottlenecked iff it is acyclic");
  if (static_cast<int>(g.edge_count()) == g.vertex_count() - 1) return;
  EdgeFlow flow(g);
  const int nv = g.vertex_count();
  for (auto [u, v] : g.edges()) {
    VertexSet x(nv, {u}), y(nv, {v});
    if (flow.count(x, y, 2) == 2) {
      r.fail(edge_witness(x, y, flow.paths(x, y)));
      return;
    }
  }
}

}  // namespace

Report edge_bottleneck_check(const Graph& g, int n, EdgeStrategy strategy, const BottleneckOptions& opts) {
  if (n < 1) throw std::invalid_argument("edge bottleneck check needs n >= 1");
  Report r;
  r.check = "edge_bottleneck";
  r.params = {{"n", n}};
  const int nv = g.vertex_count();
  EdgeFlow flow(g);
  std::uint64_t pairs = 0;

  auto test_pair = [&](const VertexSet& x, const VertexSet& y) {
    ++pairs;
    if (flow.count(x, y, n + 1) > n) {
      r.fail(edge_witness(x, y, flow.paths(x, y)));
      return true;
    }
    return false;
  };

  if (strategy == EdgeStrategy::exhaustive) {
    if (auto subsets = exhaustive_universe(g, opts)) {
      r.params["strategy"] = "exhaustive";
      std::vector<VertexSet> sets;
      sets.reserve(subsets->size());
      for (Mask s : *subsets) sets.push_back(from_mask(nv, s));
      bool done = false;
      for (std::size_t i = 0; i < subsets->size() && !done; ++i)
        for (std::size_t j = i + 1; j < subsets->size() && !done; ++j)
          if (((*subsets)[i] & (*subsets)[j]) == 0) done = test_pair(sets[i], sets[j]);
      r.details["pairs_checked"] = pairs;
      r.details["universe"] = "all disjoint connected pairs";
      r.details["connected_subsets"] = subsets->size();
      return r;
    }
    r.notes.push_back("graph exceeds the exhaustive enumeration budget; fell back to sampling");
    strategy = EdgeStrategy::sampled;
  }

  if (strategy == EdgeStrategy::vertex_pairs) {
    r.params["strategy"] = "vertex-pairs";
    r.mode = "vertex-pairs";
    r.notes.push_back("lower-bound check: only singleton pairs are tested");
    if (n == 1) {
      edge_acyclic_shortcut(g, r);
      return r;
    }
    bool done = false;
    for (Vertex u = 0; u < nv && !done; ++u)
      for (Vertex v = u + 1; v < nv && !done; ++v) done = test_pair(VertexSet(nv, {u}), VertexSet(nv, {v}));
    r.details["pairs_checked"] = pairs;
    r.details["universe"] = "singleton pairs";
    return r;
  }

  r.params["strategy"] = "sampled";
  r.mode = "sampled";
  r.seed = opts.seed;
  if (n == 1) {
    edge_acyclic_shortcut(g, r);
    return r;
  }
  if (nv < 2) return r;
  CounterRng rng(opts.seed, 0xed6e);
  const int max_size = std::max(1, nv / 3);
  for (std::size_t t = 0; t < opts.samples; ++t) {
    const VertexSet all = VertexSet::full(nv);
    VertexSet x = grow_connected(g, rng, static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(nv))),
                                 rng.uniform_int(1, max_size), all);
    const VertexSet rest = all - x;
    if (rest.empty()) continue;
    VertexSet y = grow_connected(g, rng, random_member(rng, rest), rng.uniform_int(1, max_size), rest);
    if (test_pair(x, y)) break;
  }
  r.details["pairs_checked"] = pairs;
  r.details["universe"] = "sampled disjoint connected pairs";
  return r;
}

// ---- fat bottlenecking -----------------------------------------------------

namespace {

// Set operations for the separator search on bitmasks (graphs <= 64 vertices).
struct MaskSpace {
  const MaskGraph& mg;
  int m;
  Mask all;

  using Set = Mask;
  Set make(const std::vector<Vertex>& vs) const {
    Mask s = 0;
    for (Vertex v : vs) s |= bit(v);
    return s;
  }
  std::vector<Vertex> members(Set s) const { return mask_members(s); }
  Set ball(const std::vector<Vertex>& s) const { return mg.closed_ball_of(make(s), m - 1); }
  bool separated(Set x, Set y, Set removed) const {
    const Mask keep = (all & ~removed) | x | y;
    return (mg.reach(x, keep) & y) == 0;
  }
  std::vector<int> distances(Set s) const {
    std::vector<int> d(static_cast<std::size_t>(mg.n), kUnreached);
    Mask seen = s, frontier = s;
    for (int r = 0; frontier; ++r) {
      for (Vertex v : mask_members(frontier)) d[static_cast<std::size_t>(v)] = r;
      frontier = mg.neighbors_of(frontier) & ~seen;
      seen |= frontier;
    }
    return d;
  }
};

// Same operations on dense vertex sets for larger graphs.
struct DenseSpace {
  const Graph& g;
  int m;

  using Set = VertexSet;
  Set make(const std::vector<Vertex>& vs) const { return VertexSet(g.vertex_count(), std::span<const Vertex>(vs)); }
  std::vector<Vertex> members(const Set& s) const { return s.members(); }
  Set ball(const std::vector<Vertex>& s) const { return neighborhood(g, make(s), m); }
  bool separated(const Set& x, const Set& y, const Set& removed) const {
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack = x.members();
    for (Vertex v : stack) seen[static_cast<std::size_t>(v)] = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      if (y.contains(u)) return false;
      for (Vertex w : g.neighbors(u)) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        if (removed.contains(w) && !x.contains(w) && !y.contains(w)) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
    return true;
  }
  std::vector<int> distances(const Set& s) const { return multi_source_distances(g, s); }
};

// Candidates sorted by (distance to x ∪ y, id); subsets are visited in order of
// their last candidate, the rest in lexicographic order of sorted positions.
template <class Space>
std::optional<std::vector<Vertex>> search_separator(const Space& sp, int n, const typename Space::Set& x,
                                                    const typename Space::Set& y, std::size_t budget,
                                                    bool* undecided) {
  const auto both = x | y;
  const auto dist = sp.distances(both);
  std::vector<Vertex> cand;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] > 0) cand.push_back(static_cast<Vertex>(v));
  }
  std::stable_sort(cand.begin(), cand.end(), [&](Vertex a, Vertex b) {
    return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
  });
  auto test = [&](const std::vector<Vertex>& s) { return sp.separated(x, y, sp.ball(s)); };
  if (static_cast<int>(cand.size()) <= n) {
    if (test(cand)) return cand;
    return std::nullopt;
  }
  std::size_t tried = 0;
  std::vector<Vertex> pick(static_cast<std::size_t>(n));
  bool found = false, out_of_budget = false;
  // choose the first `depth` entries from cand[0, limit)
  auto rec = [&](auto&& self, int depth, std::size_t start, std::size_t limit) -> void {
    if (found || out_of_budget) return;
    if (depth == 0) {
      if (++tried > budget) {
        out_of_budget = true;
        return;
      }
      found = test(pick);
      return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(depth) <= limit && !found && !out_of_budget; ++i) {
      pick[static_cast<std::size_t>(n - 1 - depth)] = cand[i];
      self(self, depth - 1, i + 1, limit);
    }
  };
  for (std::size_t last = static_cast<std::size_t>(n) - 1; last < cand.size() && !found && !out_of_budget; ++last) {
    pick[static_cast<std::size_t>(n) - 1] = cand[last];
    rec(rec, n - 1, 0, last);
  }
  if (out_of_budget && undecided) *undecided = true;
  if (!found) return std::nullopt;
  auto s = pick;
  std::sort(s.begin(), s.end());
  return s;
}

// Shortest path from a vertex adjacent to x to a vertex adjacent to y, with
// interior inside `allowed`; endpoints included. Empty when none.
std::vector<Vertex> bridge_path(const Graph& g, const VertexSet& x, const VertexSet& y, const VertexSet& allowed) {
  const int n = g.vertex_count();
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  std::vector<Vertex> queue;
  for (Vertex v : allowed.members()) {
    for (Vertex w : g.neighbors(v)) {
      if (x.contains(w)) {
        parent[static_cast<std::size_t>(v)] = w;
        queue.push_back(v);
        break;
      }
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (y.contains(w)) {
        std::vector<Vertex> path{w};
        for (Vertex c = u; !x.contains(c); c = parent[static_cast<std::size_t>(c)]) path.push_back(c);
        path.push_back(parent[static_cast<std::size_t>(path.back())]);
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
    for (Vertex w : g.neighbors(u)) {
      if (allowed.contains(w) && parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = u;
        queue.push_back(w);
      }
    }
  }
  return {};
}

VertexSet interior_of(int n, const std::vector<Vertex>& path) {
  VertexSet s(n);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) s.insert(path[i]);
  return s;
}

}  // namespace

std::optional<std::vector<Vertex>> find_fat_separator(const Graph& g, int m, int n, const VertexSet& x,
                                                      const VertexSet& y, std::size_t budget, bool* undecided) {
  if (m < 1 || n < 1) throw std::invalid_argument("fat separator needs m >= 1 and n >= 1");
  if (g.vertex_count() <= 64) {
    MaskGraph mg(g, m - 1);
    MaskSpace sp{mg, m, mg.n == 64 ? ~Mask{0} : bit(mg.n) - 1};
    return search_separator(sp, n, to_mask(x), to_mask(y), budget, undecided);
  }
  DenseSpace sp{g, m};
  return search_separator(sp, n, x, y, budget, undecided);
}

std::vector<std::vector<Vertex>> find_fat_paths(const Graph& g, int m, int count, const VertexSet& x,
                                                const VertexSet& y) {
  const int n = g.vertex_count();
  const VertexSet free_vertices = VertexSet::full(n) - (x | y);
  // Try each vertex adjacent to x as the start of the first path; greedily
  // add further paths outside the closed m-ball of the interiors so far.
  std::vector<Vertex> starts;
  for (Vertex v : free_vertices.members()) {
    for (Vertex w : g.neighbors(v))
      if (x.contains(w)) {
        starts.push_back(v);
        break;
      }
  }
  for (Vertex s : starts) {
    std::vector<std::vector<Vertex>> paths;
    VertexSet blocked(n);
    VertexSet first_allowed = free_vertices;
    // force the first path through s: forbid the other x-neighbours
    for (Vertex t : starts)
      if (t != s) first_allowed.erase(t);
    auto p = bridge_path(g, x, y, first_allowed);
    if (p.size() < 3) continue;
    paths.push_back(p);
    blocked |= neighborhood(g, interior_of(n, p), m + 1);
    while (static_cast<int>(paths.size()) < count) {
      auto q = bridge_path(g, x, y, free_vertices - blocked);
      if (q.size() < 3) break;
      paths.push_back(q);
      blocked |= neighborhood(g, interior_of(n, q), m + 1);
    }
    if (static_cast<int>(paths.size()) == count) return paths;
  }
  return {};
}

Report fat_bottleneck_check(const Graph& g, int m, int n, FatStrategy strategy, const BottleneckOptions& opts) {
  if (m < 1 || n < 1) throw std::invalid_argument("fat bottleneck check needs m >= 1 and n >= 1");
  Report r;
  r.check = "fat_bottleneck";
  r.params = {{"m", m}, {"n", n}};
  r.notes.push_back(
      "separator test: X and Y lie in different components after deleting the open m-ball of S minus X and Y");
  const int nv = g.vertex_count();
  std::uint64_t pairs = 0, undecided_pairs = 0;
  bool have_paths = false;
  std::uint64_t pairs_after_violation = 0;

  // Returns true when scanning should stop.
  auto on_violation = [&](const VertexSet& x, const VertexSet& y) {
    auto paths = find_fat_paths(g, m, n + 1, x, y);
    Json w{{"X", x.members()}, {"Y", y.members()}, {"paths", paths.empty() ? Json(nullptr) : path_list(paths)}};
    if (r.holds) {
      r.fail(std::move(w));
    } else {
      r.fail(nullptr);
      if (!have_paths && !paths.empty()) r.witness = std::move(w);
    }
    have_paths = have_paths || !paths.empty();
    return have_paths;
  };

  if (strategy == FatStrategy::exhaustive) {
    if (auto subsets = exhaustive_universe(g, opts)) {
      r.params["strategy"] = "exhaustive";
      MaskGraph mg(g, m);
      MaskSpace sp{mg, m, nv == 64 ? ~Mask{0} : bit(nv) - 1};
      const auto& sets = *subsets;
      bool done = false;
      for (std::size_t i = 0; i < sets.size() && !done; ++i) {
        const Mask near = mg.closed_ball_of(sets[i], m);
        for (std::size_t j = i + 1; j < sets.size() && !done; ++j) {
          if (sets[j] & near) continue;
          ++pairs;
          if (!r.holds && ++pairs_after_violation > opts.witness_search_pairs) {
            done = true;
            break;
          }
          bool undecided = false;
          if (search_separator(sp, n, sets[i], sets[j], opts.separator_budget, &undecided)) continue;
          if (undecided) {
            ++undecided_pairs;
            continue;
          }
          done = on_violation(from_mask(nv, sets[i]), from_mask(nv, sets[j]));
        }
      }
      r.details["pairs_checked"] = pairs;
      r.details["undecided_pairs"] = undecided_pairs;
      r.details["universe"] = "all m-disjoint connected pairs";
      r.details["connected_subsets"] = sets.size();
      if (!r.holds) r.details["scan"] = done && have_paths ? "stopped at first violation with paths" : "bounded";
      if (r.holds && undecided_pairs > 0) r.notes.push_back("some pairs exceeded the separator budget");
      return r;
    }
    r.notes.push_back("graph exceeds the exhaustive enumeration budget; fell back to sampling");
  }

  r.params["strategy"] = "sampled";
  r.mode = "sampled";
  r.seed = opts.seed;
  CounterRng rng(opts.seed, 0xfa7b);
  const int max_size = std::max(1, nv / 3);
  const VertexSet all = VertexSet::full(nv);
  for (std::size_t t = 0; t < opts.samples; ++t) {
    VertexSet x = grow_connected(g, rng, static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(nv))),
                                 rng.uniform_int(1, max_size), all);
    const VertexSet far = all - neighborhood(g, x, m + 1);
    if (far.empty()) continue;
    VertexSet y = grow_connected(g, rng, random_member(rng, far), rng.uniform_int(1, max_size), far);
    ++pairs;
    bool undecided = false;
    if (find_fat_separator(g, m, n, x, y, opts.separator_budget, &undecided)) continue;
    if (undecided) {
      ++undecided_pairs;
      continue;
    }
    on_violation(x, y);
    break;
  }
  r.details["pairs_checked"] = pairs;
  r.details["undecided_pairs"] = undecided_pairs;
  r.details["universe"] = "sampled m-disjoint connected pairs";
  return r;
}

}  // namespace coarse
