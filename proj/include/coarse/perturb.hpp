#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarse/graph.hpp"
#include "coarse/qi.hpp"
#include "coarse/report.hpp"

namespace coarse {

// Raised when an edit's side condition fails; such edits need not preserve
// the quasi-isometry type (removing a bridge, contracting a far-flung set).
class PerturbError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EditSpec {
  enum class Kind { add_edge, add_edges_bounded, remove_cycle_edge, subdivide_all, contract_components };
  Kind kind = Kind::add_edge;
  std::vector<Edge> pairs;                  // add-edge, add-edges-bounded, remove-cycle-edge
  std::vector<std::vector<Vertex>> sets;    // contract-components
  std::optional<int> bound;                 // M

  static EditSpec add_edge(Vertex u, Vertex v);
  static EditSpec add_edges_bounded(std::vector<Edge> pairs, int m);
  static EditSpec remove_cycle_edge(Vertex u, Vertex v, std::optional<int> m = std::nullopt);
  static EditSpec subdivide_all(int m);
  static EditSpec contract_components(std::vector<std::vector<Vertex>> sets, int m);

  // {"op": "add-edge" | ..., "pairs": [[u,v],...], "sets": [[...],...], "M": m}
  static EditSpec from_json(const Json& j);
  Json to_json() const;
  std::string name() const;
};

struct PerturbResult {
  Graph graph;
  // Old vertex -> new vertex; total on the old graph.
  std::vector<Vertex> map;
  QIWitness predicted;
  std::string rule;  // how the prediction was derived
};

PerturbResult perturb(const Graph& g, const EditSpec& edit);

// Measures the distortion of the edit's map and checks the predicted
// constants hold on every pair (or the declared sample).
Report check_perturbation(const Graph& g, const EditSpec& edit, const SamplingOptions& opts = {});

}  // namespace coarse
