#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarse/graph.hpp"
#include "coarse/report.hpp"

namespace coarse {

struct SamplingOptions {
  std::uint64_t seed = 0;
  // All pairs are checked at or below this order; above it, `samples` random pairs.
  int exhaustive_limit = 2000;
  std::size_t samples = 100000;
};

// Joint distribution of (d_g(x,y), d_g2(f(x),f(y))) over unordered pairs x != y.
struct PairHistogram {
  struct Cell {
    std::uint64_t count = 0;
    Vertex x = -1;  // first pair seen with these distances
    Vertex y = -1;
  };
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t pairs = 0;
  std::map<std::pair<int, int>, Cell> cells;
};

PairHistogram collect_pair_distances(const Graph& g, const Graph& g2, std::span<const Vertex> map,
                                     const SamplingOptions& opts = {});

// Affine constants with a = a_halves / 2 on a half-integer grid and integer b:
// d/a - b <= d' <= a d + b.
struct QIWitness {
  int a_halves = 2;
  long long b = 0;
  std::string direction = "both";
  // Breakpoints of the minimal feasible b as a function of a.
  std::vector<std::pair<int, long long>> frontier;

  double a() const { return a_halves / 2.0; }
  Json to_json() const;
};

// Minimal b over the grid, then the smallest a achieving it. Exact integer
// arithmetic on the histogram.
QIWitness measure_distortion(const PairHistogram& hist);
QIWitness measure_distortion(const Graph& g, const Graph& g2, std::span<const Vertex> map,
                             const SamplingOptions& opts = {});

// Rational a = a_num / a_den, integer b.
bool qi_feasible(const PairHistogram& hist, long long a_num, long long a_den, long long b);

// Coarse image of a connected h is (a+b)-connected; here a+b is rounded down
// since distances are integers.
Report check_coarse_image_connected(const Graph& g, const Graph& g2, std::span<const Vertex> map,
                                    const VertexSet& h, double a, double b);

// Pairs with d > a + ab must have distinct images.
Report check_far_pairs_separate(const PairHistogram& hist, const QIWitness& qi);

struct FatTransferThreshold {
  double value = 0;
  std::string active;  // which expression attained the max
};
// Scale above which failing M-fat 1-bottlenecking transfers to failing
// 1-edge bottlenecking across an (a,b) quasi-isometry.
FatTransferThreshold fat_bottleneck_transfer_threshold(double a, double b);

}  // namespace coarse
