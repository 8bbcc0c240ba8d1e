#pragma once

#include <cstdint>
#include <string>

#include "coarse/graph.hpp"
#include "coarse/report.hpp"

namespace coarse {

// Families; every generated graph is rooted.
Graph gen_path(int n);                      // 0-1-...-(n-1), root 0
Graph gen_cycle(int n);                     // n >= 3, root 0
Graph gen_grid(int rows, int cols);         // row-major ids, root corner 0
Graph gen_star(int leaves);                 // center 0, root 0
Graph gen_complete(int n);                  // K_n, root 0
// Vertex i > 0 attaches to a uniform earlier vertex.
Graph gen_random_tree(int n, std::uint64_t seed);
// Random tree plus `chords` extra edges, each between two vertices at tree
// distance in [2, chord_len]. Fewer chords are added if the tree runs out of
// candidate pairs.
Graph gen_quasi_tree(int n, int chord_len, int chords, std::uint64_t seed);
// G(n,p), then remaining components linked in order of their smallest vertex
// by one edge between smallest members.
Graph gen_gnp_connected(int n, double p, std::uint64_t seed);
// A pattern realised as a simple graph: every pattern edge becomes a path of
// `subdivide` edges (subdivide >= 1; parallel edges need subdivide >= 2).
Graph gen_pattern(const PatternGraph& h, int subdivide);

// Theta gadget hung off a root spine of length dist: two rails at distance 2
// joined at both ends plus a wide detour. Requires lambda, k >= 1 and
// dist >= 4 lambda.
Graph gen_hammer(int lambda, int k, int dist);

// GenSpec: {"family": ..., parameters..., "seed": s}. Throws
// std::invalid_argument on unknown families or bad parameters.
Graph gen(const Json& spec);

}  // namespace coarse
