#include "coarse/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "coarse/metric.hpp"
#include "coarse/rng.hpp"

namespace coarse {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

Graph gen_path(int n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e, 0);
}

Graph gen_cycle(int n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e, 0);
}

Graph gen_grid(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1");
  std::vector<Edge> e;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return Graph::from_edges(rows * cols, e, 0);
}

Graph gen_star(int leaves) {
  require(leaves >= 1, "star needs at least one leaf");
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e, 0);
}

Graph gen_complete(int n) {
  require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph::from_edges(n, e, 0);
}

Graph gen_random_tree(int n, std::uint64_t seed) {
  require(n >= 1, "random_tree needs n >= 1");
  CounterRng rng(seed, 1);
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(i))), i);
  return Graph::from_edges(n, e, 0);
}

Graph gen_quasi_tree(int n, int chord_len, int chords, std::uint64_t seed) {
  require(chord_len >= 2, "quasi_tree needs chord_len >= 2");
  require(chords >= 0, "quasi_tree needs chords >= 0");
  Graph tree = gen_random_tree(n, seed);
  CounterRng rng(seed, 2);
  auto edges = tree.edges();
  std::vector<Edge> added;
  // Candidate chords are drawn by picking a vertex and a target inside its
  // tree ball; bounded attempts keep this deterministic and finite.
  const int attempts = 50 * std::max(chords, 1);
  for (int t = 0; t < attempts && static_cast<int>(added.size()) < chords; ++t) {
    const auto u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    auto dist = bfs_distances(tree, u, chord_len);
    std::vector<Vertex> cand;
    for (Vertex v = 0; v < n; ++v) {
      const int d = dist[static_cast<std::size_t>(v)];
      if (d >= 2 && d <= chord_len) cand.push_back(v);
    }
    if (cand.empty()) continue;
    const Vertex v = cand[static_cast<std::size_t>(rng.below(cand.size()))];
    Edge ch{std::min(u, v), std::max(u, v)};
    if (std::find(added.begin(), added.end(), ch) != added.end()) continue;
    added.push_back(ch);
  }
  edges.insert(edges.end(), added.begin(), added.end());
  return Graph::from_edges(n, edges, 0);
}

Graph gen_gnp_connected(int n, double p, std::uint64_t seed) {
  require(n >= 1, "gnp_connected needs n >= 1");
  require(p >= 0.0 && p <= 1.0, "gnp_connected needs 0 <= p <= 1");
  CounterRng rng(seed, 3);
  std::vector<Edge> e;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) {
        e.emplace_back(i, j);
        parent[static_cast<std::size_t>(find_root(parent, j))] = find_root(parent, i);
      }
    }
  }
  // Link components: smallest member of each component to vertex 0's side.
  std::vector<int> first_of_component;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const int r = find_root(parent, v);
    if (!seen[static_cast<std::size_t>(r)]) {
      seen[static_cast<std::size_t>(r)] = 1;
      first_of_component.push_back(v);
    }
  }
  for (std::size_t i = 1; i < first_of_component.size(); ++i) {
    e.emplace_back(first_of_component[i - 1], first_of_component[i]);
  }
  return Graph::from_edges(n, e, 0);
}

Graph gen_pattern(const PatternGraph& h, int subdivide) {
  require(subdivide >= 1, "pattern subdivision must be >= 1");
  int next = h.vertex_count;
  std::vector<Edge> e;
  std::vector<Edge> seen;
  for (auto [u, v] : h.edges) {
    Edge key{std::min(u, v), std::max(u, v)};
    const bool repeat = std::find(seen.begin(), seen.end(), key) != seen.end();
    seen.push_back(key);
    require(!(repeat && subdivide < 2), "parallel pattern edges need subdivide >= 2");
    int prev = u;
    for (int i = 1; i < subdivide; ++i) {
      e.emplace_back(prev, next);
      prev = next++;
    }
    e.emplace_back(prev, v);
  }
  return Graph::from_edges(next, e, 0);
}

Graph gen_hammer(int lambda, int k, int dist) {
  require(lambda >= 1 && k >= 1, "hammer needs lambda, k >= 1");
  require(dist >= 4 * lambda, "hammer needs dist >= 4 lambda");
  // Root 0 reaches x along a spine of length dist. From x to y run two rails
  // of length L = 2(lambda + k) whose i-th interior vertices are joined by a
  // length-2 rung, plus a third path of length 2L that detours wide.
  const int L = 2 * (lambda + k);
  std::vector<Edge> e;
  int next = 1;
  int prev = 0;
  for (int i = 0; i < dist; ++i) {
    e.emplace_back(prev, next);
    prev = next++;
  }
  const int x = prev;
  const int y = next++;
  auto rail = [&] {
    std::vector<int> r{x};
    for (int i = 1; i < L; ++i) r.push_back(next++);
    r.push_back(y);
    for (int i = 0; i < L; ++i) e.emplace_back(r[i], r[i + 1]);
    return r;
  };
  const auto a = rail();
  const auto b = rail();
  for (int i = 1; i < L; ++i) {
    const int c = next++;
    e.emplace_back(a[i], c);
    e.emplace_back(c, b[i]);
  }
  prev = x;
  for (int i = 1; i < 2 * L; ++i) {
    e.emplace_back(prev, next);
    prev = next++;
  }
  e.emplace_back(prev, y);
  return Graph::from_edges(next, e, 0);
}

namespace {

int int_param(const Json& spec, const char* key) {
  if (!spec.contains(key)) throw std::invalid_argument(std::string("gen: missing parameter '") + key + "'");
  const auto& v = spec.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("gen: parameter '") + key + "' must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x > 10'000'000) throw std::invalid_argument(std::string("gen: parameter '") + key + "' out of range");
  return static_cast<int>(x);
}

std::uint64_t seed_param(const Json& spec) {
  if (!spec.contains("seed")) return 0;
  const auto& v = spec.at("seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw std::invalid_argument("gen: seed must be a natural number");
  return v.get<std::uint64_t>();
}

}  // namespace

Graph gen(const Json& spec) {
  if (!spec.is_object() || !spec.contains("family") || !spec.at("family").is_string())
    throw std::invalid_argument("gen: spec needs a string 'family'");
  const auto family = spec.at("family").get<std::string>();
  const auto seed = seed_param(spec);
  if (family == "path") return gen_path(int_param(spec, "n"));
  if (family == "cycle") return gen_cycle(int_param(spec, "n"));
  if (family == "grid") return gen_grid(int_param(spec, "rows"), int_param(spec, "cols"));
  if (family == "star") return gen_star(int_param(spec, "leaves"));
  if (family == "complete") return gen_complete(int_param(spec, "n"));
  if (family == "random_tree") return gen_random_tree(int_param(spec, "n"), seed);
  if (family == "quasi_tree")
    return gen_quasi_tree(int_param(spec, "n"), int_param(spec, "chord_len"), int_param(spec, "chords"), seed);
  if (family == "gnp_connected") {
    if (!spec.contains("p") || !spec.at("p").is_number()) throw std::invalid_argument("gen: gnp_connected needs numeric 'p'");
    return gen_gnp_connected(int_param(spec, "n"), spec.at("p").get<double>(), seed);
  }
  if (family == "hammer") return gen_hammer(int_param(spec, "lambda"), int_param(spec, "k"), int_param(spec, "dist"));
  if (family == "pattern") {
    if (!spec.contains("pattern") || !spec.at("pattern").is_string())
      throw std::invalid_argument("gen: pattern family needs a string 'pattern'");
    const int sub = spec.contains("subdivide") ? int_param(spec, "subdivide") : 1;
    return gen_pattern(PatternGraph::named(spec.at("pattern").get<std::string>()), sub);
  }
  throw std::invalid_argument("gen: unknown family '" + family + "'");
}

}  // namespace coarse
