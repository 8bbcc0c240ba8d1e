#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/graph.hpp"
#include "coarse/report.hpp"

namespace coarse {

// Which object pairs are exempt from M-disjointness.
//  strict:      a path is exempt only from its own two endpoint branch sets
//               (vertex–edge incidence); everything else must be M-disjoint.
//  near_shared: additionally, two paths sharing an H-vertex w may come within
//               M of each other at points that are both within M of w's set.
//  lenient:     additionally, two paths sharing an H-vertex are fully exempt.
// All rules require vertex-disjoint objects apart from path ends.
enum class IncidenceRule { strict, near_shared, lenient };

std::string to_string(IncidenceRule rule);
IncidenceRule parse_incidence_rule(const std::string& s);

struct FatEmbedding {
  PatternGraph pattern;
  // One connected set per pattern vertex.
  std::vector<std::vector<Vertex>> branch_sets;
  // branch_paths[i] realises pattern.edges[i] = (u, v): it starts in
  // branch_sets[u], ends in branch_sets[v], and its interior avoids every
  // branch set.
  std::vector<std::vector<Vertex>> branch_paths;
  int fatness = 0;

  Json to_json() const;
  static FatEmbedding from_json(const Json& j);
};

// Checks the embedding at M = emb.fatness. Failures name the offending pair
// and the achieved distance. details["achieved_fatness"] is the largest M for
// which the embedding is valid (null when structurally broken).
Report verify_fat_embedding(const Graph& g, const FatEmbedding& emb, IncidenceRule rule = IncidenceRule::strict);

// Largest M at which the embedding is valid; nullopt when it is structurally
// invalid. With no pairs to separate, returns the diameter of g.
std::optional<int> achieved_fatness(const Graph& g, const FatEmbedding& emb,
                                    IncidenceRule rule = IncidenceRule::strict);

enum class SearchMode { exhaustive, heuristic };
SearchMode parse_search_mode(const std::string& s);

struct MinorSearchOptions {
  SearchMode mode = SearchMode::exhaustive;
  // Exhaustive: node limit (0 = none). Heuristic: number of restarts.
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  // Exhaustive search refuses cores larger than this (at most 64).
  int vertex_cap = 14;
  // At m = 0, search connected partitions instead of routing paths.
  bool partition_shortcut = true;
};

struct MinorSearchResult {
  std::optional<FatEmbedding> embedding;
  // True when "no embedding" is a proof of absence.
  bool complete = false;
  std::uint64_t nodes = 0;
  std::string mode;
  int core_vertices = 0;

  Json to_json() const;
};

// Search under the strict rule. Throws std::invalid_argument for patterns
// with more than 6 vertices, m < 0, or an exhaustive request on a core above
// the vertex cap. Every returned embedding passes verify_fat_embedding.
MinorSearchResult find_fat_minor(const Graph& g, const PatternGraph& h, int m, const MinorSearchOptions& opts = {});

struct FatnessProbe {
  // Largest m <= upper with an embedding found; nullopt when none at m = 0.
  std::optional<int> value;
  // False when some search was heuristic or ran out of budget; value is then
  // a lower bound.
  bool exact = true;
  std::optional<FatEmbedding> best;
  Json trials = Json::array();

  Json to_json() const;
};

// Binary search over m using monotonicity (an M-fat embedding is M'-fat for
// every M' <= M).
FatnessProbe max_fatness(const Graph& g, const PatternGraph& h, int upper, const MinorSearchOptions& opts = {});

}  // namespace coarse
