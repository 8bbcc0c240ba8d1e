#include "coarse/io.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace coarse {

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertex_count"] = g.vertex_count();
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  j["root"] = g.root() ? Json(*g.root()) : Json(nullptr);
  return j;
}

Graph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertex_count") || !j.contains("edges"))
    throw GraphError("graph JSON needs vertex_count and edges");
  try {
    const int n = j.at("vertex_count").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw GraphError("edges must be [u, v] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::optional<Vertex> root;
    if (j.contains("root") && !j["root"].is_null()) root = j["root"].get<int>();
    return Graph::from_edges(n, edges, root);
  } catch (const Json::exception& e) {
    throw GraphError(std::string("malformed graph JSON: ") + e.what());
  }
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Edge> edges;
  std::optional<Vertex> root;
  std::optional<int> declared;
  int max_id = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      std::istringstream c(line.substr(start + 1));
      std::string key;
      long long value = 0;
      if (c >> key >> value) {
        if (key == "root") root = static_cast<Vertex>(value);
        if (key == "vertices") declared = static_cast<int>(value);
      }
      continue;
    }
    std::istringstream ls(line);
    long long u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0)
      throw GraphError("edge list line " + std::to_string(line_no) + ": expected two vertex ids");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id = std::max<int>(max_id, static_cast<int>(std::max(u, v)));
  }
  const int n = declared.value_or(max_id + 1);
  return Graph::from_edges(n, edges, root);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "#vertices " << g.vertex_count() << "\n";
  if (g.root()) out << "#root " << *g.root() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

Json skeleton_json(const Skeleton& s) {
  Json j = skeleton_to_json(s);
  j["base"] = graph_to_json(s.base);
  return j;
}

Skeleton skeleton_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("params"))
    throw GraphError("skeleton JSON needs base and params");
  SkeletonParams p;
  try {
    p.lambda = j.at("params").at("lambda").get<int>();
    p.k = j.at("params").at("k").get<int>();
  } catch (const Json::exception& e) {
    throw GraphError(std::string("malformed skeleton params: ") + e.what());
  }
  if (p.lambda < 1 || p.k < 1) throw GraphError("skeleton params must be >= 1");
  auto s = build_skeleton(graph_from_json(j.at("base")), p);
  if (j.contains("block_of") && j["block_of"] != Json(s.block_of))
    throw GraphError("skeleton JSON block_of does not match its base graph");
  if (j.contains("layer_of") && j["layer_of"] != Json(s.layer_of))
    throw GraphError("skeleton JSON layer_of does not match its base graph");
  return s;
}

std::string skeleton_to_dot(const Skeleton& s) {
  std::ostringstream out;
  out << "graph skeleton {\n";
  std::map<int, std::vector<int>> by_layer;
  for (int b = 0; b < s.block_count(); ++b) by_layer[s.block_layer[static_cast<std::size_t>(b)]].push_back(b);
  for (const auto& [layer, ids] : by_layer) {
    out << "  { rank=same;";
    for (int b : ids) out << " " << b << ";";
    out << " }\n";
  }
  for (int b = 0; b < s.block_count(); ++b) {
    out << "  " << b << " [label=\"" << b << " (" << s.blocks[static_cast<std::size_t>(b)].size()
        << ")\", rank=" << s.block_layer[static_cast<std::size_t>(b)] << "];\n";
  }
  for (auto [u, v] : s.quotient.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph g {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coarse
