#include "coarse/qi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "coarse/metric.hpp"
#include "coarse/rng.hpp"

namespace coarse {

namespace {

long long ceil_div(long long num, long long den) {
  // den > 0
  return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

}  // namespace

PairHistogram collect_pair_distances(const Graph& g, const Graph& g2, std::span<const Vertex> map,
                                     const SamplingOptions& opts) {
  const int n = g.vertex_count();
  if (static_cast<int>(map.size()) != n) throw std::invalid_argument("map must be total on V(g)");
  for (Vertex v : map) {
    if (!g2.contains_vertex(v)) throw std::invalid_argument("map image outside target graph");
  }
  PairHistogram hist;
  hist.seed = opts.seed;
  std::unordered_map<Vertex, std::vector<int>> target_rows;
  auto target_row = [&](Vertex img) -> const std::vector<int>& {
    auto it = target_rows.find(img);
    if (it == target_rows.end()) it = target_rows.emplace(img, bfs_distances(g2, img)).first;
    return it->second;
  };
  auto record = [&](Vertex x, Vertex y, int d, int d2) {
    auto& cell = hist.cells[{d, d2}];
    if (cell.count == 0) {
      cell.x = x;
      cell.y = y;
    }
    ++cell.count;
    ++hist.pairs;
  };

  if (n <= opts.exhaustive_limit) {
    hist.mode = "exhaustive";
    for (Vertex x = 0; x < n; ++x) {
      auto dist = bfs_distances(g, x);
      const auto& row = target_row(map[static_cast<std::size_t>(x)]);
      for (Vertex y = x + 1; y < n; ++y) {
        record(x, y, dist[static_cast<std::size_t>(y)], row[static_cast<std::size_t>(map[static_cast<std::size_t>(y)])]);
      }
    }
    return hist;
  }

  hist.mode = "sampled";
  CounterRng rng(opts.seed, 0x9a1f);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(opts.samples);
  while (pairs.size() < opts.samples) {
    auto x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    auto y = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    pairs.emplace_back(x, y);
  }
  std::sort(pairs.begin(), pairs.end());
  std::size_t i = 0;
  while (i < pairs.size()) {
    const Vertex x = pairs[i].first;
    auto dist = bfs_distances(g, x);
    const auto& row = target_row(map[static_cast<std::size_t>(x)]);
    for (; i < pairs.size() && pairs[i].first == x; ++i) {
      const Vertex y = pairs[i].second;
      record(x, y, dist[static_cast<std::size_t>(y)], row[static_cast<std::size_t>(map[static_cast<std::size_t>(y)])]);
    }
  }
  return hist;
}

Json QIWitness::to_json() const {
  Json j;
  j["a"] = a();
  j["b"] = b;
  j["direction"] = direction;
  Json f = Json::array();
  for (auto [h, bb] : frontier) f.push_back({h / 2.0, bb});
  j["frontier"] = f;
  return j;
}

QIWitness measure_distortion(const PairHistogram& hist) {
  // For a = h/2:
  //   upper: d' <= h d / 2 + b      =>  b >= ceil((2d' - h d) / 2)
  //   lower: 2d / h - b <= d'       =>  b >= ceil((2d - h d') / h)
  long long h_max = 2;
  for (const auto& [key, cell] : hist.cells) {
    auto [d, d2] = key;
    // beyond these, b no longer decreases
    if (d2 > 0) h_max = std::max<long long>(h_max, ceil_div(2LL * d, d2));
    else h_max = std::max<long long>(h_max, 2LL * d);
    if (d > 0) h_max = std::max<long long>(h_max, ceil_div(2LL * d2, d));
  }
  auto b_at = [&](long long h) {
    long long b = 0;
    for (const auto& [key, cell] : hist.cells) {
      const long long d = key.first;
      const long long d2 = key.second;
      b = std::max(b, ceil_div(2 * d2 - h * d, 2));
      b = std::max(b, ceil_div(2 * d - h * d2, h));
    }
    return b;
  };
  QIWitness best;
  long long best_b = -1;
  long long prev = -1;
  for (long long h = 2; h <= h_max; ++h) {
    const long long b = b_at(h);
    if (b != prev) {
      best.frontier.emplace_back(static_cast<int>(h), b);
      prev = b;
    }
    if (best_b < 0 || b < best_b) {
      best_b = b;
      best.a_halves = static_cast<int>(h);
    }
  }
  best.b = best_b < 0 ? 0 : best_b;
  return best;
}

QIWitness measure_distortion(const Graph& g, const Graph& g2, std::span<const Vertex> map,
                             const SamplingOptions& opts) {
  return measure_distortion(collect_pair_distances(g, g2, map, opts));
}

bool qi_feasible(const PairHistogram& hist, long long a_num, long long a_den, long long b) {
  if (a_num <= 0 || a_den <= 0) throw std::invalid_argument("qi_feasible: a must be positive");
  for (const auto& [key, cell] : hist.cells) {
    const long long d = key.first;
    const long long d2 = key.second;
    if (a_den * d2 > a_num * d + a_den * b) return false;
    if (a_den * d > a_num * (d2 + b)) return false;
  }
  return true;
}

Report check_coarse_image_connected(const Graph& g, const Graph& g2, std::span<const Vertex> map,
                                    const VertexSet& h, double a, double b) {
  Report r;
  r.check = "coarse_image_connected";
  const int m = static_cast<int>(std::floor(a + b + 1e-9));
  r.params = {{"a", a}, {"b", b}, {"connectivity", m}};
  if (!is_connected_subset(g, h)) throw std::invalid_argument("h must be connected in g");
  VertexSet image(g2.vertex_count());
  h.for_each([&](Vertex v) { image.insert(map[static_cast<std::size_t>(v)]); });
  r.details["image_size"] = image.size();
  if (image.size() <= 1) return r;
  if (m < 1) {
    r.fail({{"reason", "a+b < 1 and the image has more than one vertex"}});
    return r;
  }
  auto comps = m_connected_components(g2, image, m);
  r.details["components"] = comps.size();
  if (comps.size() > 1) {
    r.fail({{"component_a", comps[0]}, {"component_b", comps[1]}});
  }
  return r;
}

Report check_far_pairs_separate(const PairHistogram& hist, const QIWitness& qi) {
  Report r;
  r.check = "far_pairs_separate";
  r.mode = hist.mode;
  if (hist.mode == "sampled") r.seed = hist.seed;
  // d > a + ab with a = h/2  <=>  2d > h (1 + b)
  const long long h = qi.a_halves;
  r.params = {{"a", qi.a()}, {"b", qi.b}, {"threshold", qi.a() + qi.a() * static_cast<double>(qi.b)}};
  long long checked = 0;
  for (const auto& [key, cell] : hist.cells) {
    const long long d = key.first;
    if (2 * d <= h * (1 + qi.b)) continue;
    checked += static_cast<long long>(cell.count);
    if (key.second == 0) r.fail({{"x", cell.x}, {"y", cell.y}, {"d", d}});
  }
  r.details["pairs_checked"] = checked;
  return r;
}

FatTransferThreshold fat_bottleneck_transfer_threshold(double a, double b) {
  const double statement = 2 * (a + b) * (a + a * b);
  const double proof = (a + a * b) * (2 * a + b);
  if (statement >= proof) return {statement, "2(a+b)(a+ab)"};
  return {proof, "(a+ab)(2a+b)"};
}

}  // namespace coarse
