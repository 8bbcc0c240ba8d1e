#pragma once

#include <optional>
#include <vector>

#include "coarse/fat_minor.hpp"
#include "coarse/report.hpp"
#include "coarse/skeleton.hpp"

namespace coarse {

// Fatness the base embedding must reach after lifting a quotient embedding
// of fatness m with 1-balls across a (2,2) skeleton: m + floor(m/2) - 2 for
// m >= 4, nullopt below.
std::optional<int> dieting_target(int m);

// Fatness a 3-fat quotient embedding of the (M,M) skeleton must reach after
// lifting with floor(M/2)-balls: M. nullopt when m < 3.
std::optional<int> mm_target(int m, int scale);

struct LiftResult {
  std::optional<FatEmbedding> embedding;  // present when the lift is well formed
  Report report;                          // holds iff well formed and valid at the target
};

// Pulls each branch set back to its preimage, closes it under the closed
// ball of radius ball_radius, and reroutes each branch path by BFS through
// the closed ball of its interior's preimage, avoiding the lifted branch sets
// and earlier paths. A disconnected lifted set or an unroutable path is a
// lift failure. The lifted embedding is verified at `target` (default: the
// quotient fatness) and its achieved fatness is reported.
LiftResult lift_embedding(const Skeleton& s, const FatEmbedding& quotient_emb, int ball_radius,
                          std::optional<int> target = std::nullopt);

struct ExperimentOptions {
  MinorSearchOptions search;
  int upper = 6;  // max_fatness probe bound
};

// Iterated (2,2) skeletons of g. Per stage: max_fatness of h. Whenever a
// stage has an embedding of fatness >= 4, it is lifted one stage up with
// 1-balls and must certify dieting_target. The report tabulates the stages,
// the lifts, and whether the last stage stays below 5-fat and at most 4-fat.
Report starving_minor_experiment(const Graph& g, const PatternGraph& h, int iterations,
                                 const ExperimentOptions& opts = {});

// The (M,M) skeleton of g; if it holds a 3-fat h minor, lift it with
// floor(M/2)-balls and require fatness M in g.
Report mm_reduce_experiment(const Graph& g, const PatternGraph& h, int scale, const ExperimentOptions& opts = {});

struct HammerCase {
  int lambda = 2;
  int k = 2;
  int dist = 8;
};

// For each case: the gadget has no 3-fat theta3 (exhaustive at its size), its
// (lambda,k) skeleton has a verified 2-fat theta3, and that embedding lifts
// with 1-balls to a valid base embedding whose fatness stays <= 2.
Report hammer_sweep(const std::vector<HammerCase>& cases, const ExperimentOptions& opts = {});

}  // namespace coarse
