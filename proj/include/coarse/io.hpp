#pragma once

#include <cstdint>
#include <string>

#include "coarse/fat_minor.hpp"
#include "coarse/graph.hpp"
#include "coarse/report.hpp"
#include "coarse/skeleton.hpp"

namespace coarse {

// {"vertex_count": n, "edges": [[u,v],...], "root": r or null}. Parsing
// validates through Graph::from_edges and raises GraphError.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// One "u v" pair per line, blank lines and "#" comments ignored except a
// "#root r" line. The vertex count is one more than the largest id, or taken
// from a "#vertices n" line.
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

// Skeleton JSON with the base graph under "base"; reading rebuilds the
// skeleton from base and params and rejects mismatching layer_of/block_of.
Json skeleton_json(const Skeleton& s);
Skeleton skeleton_from_json(const Json& j);

// Quotient as an undirected DOT graph; each node carries its layer as
// `rank` and nodes of one layer share a rank=same subgraph.
std::string skeleton_to_dot(const Skeleton& s);
std::string graph_to_dot(const Graph& g);

// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace coarse
