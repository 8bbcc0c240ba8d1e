#include "coarse/lift.hpp"

#include <algorithm>
#include <stdexcept>

#include "coarse/generators.hpp"
#include "coarse/metric.hpp"

namespace coarse {

std::optional<int> dieting_target(int m) {
  if (m < 4) return std::nullopt;
  return m + m / 2 - 2;
}

std::optional<int> mm_target(int m, int scale) {
  if (m < 3) return std::nullopt;
  return scale;
}

namespace {

// BFS from the vertices of `region` adjacent to `from` to one adjacent to
// `to`; returns the full path including one endpoint in each set.
std::vector<Vertex> route_through(const Graph& g, const VertexSet& from, const VertexSet& to, const VertexSet& region) {
  const int n = g.vertex_count();
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  std::vector<Vertex> queue;
  from.for_each([&](Vertex a) {
    for (Vertex s : g.neighbors(a)) {
      if (region.contains(s) && parent[static_cast<std::size_t>(s)] == -2) {
        parent[static_cast<std::size_t>(s)] = a;
        queue.push_back(s);
      }
    }
  });
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex b : g.neighbors(x)) {
      if (!to.contains(b)) continue;
      std::vector<Vertex> path{b};
      for (Vertex c = x; !from.contains(c); c = parent[static_cast<std::size_t>(c)]) path.push_back(c);
      path.push_back(parent[static_cast<std::size_t>(path.back())]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Vertex w : g.neighbors(x)) {
      if (region.contains(w) && parent[static_cast<std::size_t>(w)] == -2) {
        parent[static_cast<std::size_t>(w)] = x;
        queue.push_back(w);
      }
    }
  }
  return {};
}

Json opt_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

// Exhaustive when the core fits under the cap, otherwise heuristic; the mode
// used is recorded in the result.
MinorSearchResult search_any(const Graph& g, const PatternGraph& h, int m, const MinorSearchOptions& opts) {
  try {
    return find_fat_minor(g, h, m, opts);
  } catch (const std::invalid_argument&) {
    if (opts.mode != SearchMode::exhaustive) throw;
    auto fallback = opts;
    fallback.mode = SearchMode::heuristic;
    fallback.budget = 0;
    return find_fat_minor(g, h, m, fallback);
  }
}

FatnessProbe probe_any(const Graph& g, const PatternGraph& h, int upper, const MinorSearchOptions& opts) {
  try {
    return max_fatness(g, h, upper, opts);
  } catch (const std::invalid_argument&) {
    if (opts.mode != SearchMode::exhaustive) throw;
    auto fallback = opts;
    fallback.mode = SearchMode::heuristic;
    fallback.budget = 0;
    return max_fatness(g, h, upper, fallback);
  }
}

}  // namespace

LiftResult lift_embedding(const Skeleton& s, const FatEmbedding& quotient_emb, int ball_radius,
                          std::optional<int> target) {
  if (ball_radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  LiftResult out;
  Report& rep = out.report;
  rep.check = "lift_embedding";
  rep.params = {{"lambda", s.params.lambda}, {"k", s.params.k}, {"ball_radius", ball_radius},
                {"quotient_fatness", quotient_emb.fatness}};
  const int want = target.value_or(quotient_emb.fatness);
  rep.details["target"] = want;

  const auto qcheck = verify_fat_embedding(s.quotient, quotient_emb);
  if (!qcheck.holds) {
    rep.fail({{"stage", "quotient"}, {"reason", "quotient embedding is invalid"}, {"report", qcheck.to_json()}});
    return out;
  }
  const Graph& g = s.base;
  const int n = g.vertex_count();
  const int qn = s.quotient.vertex_count();
  const auto& h = quotient_emb.pattern;

  std::vector<VertexSet> sets;
  VertexSet all_sets(n);
  for (std::size_t i = 0; i < quotient_emb.branch_sets.size(); ++i) {
    const auto pre = s.preimage(VertexSet(qn, quotient_emb.branch_sets[i]));
    auto lifted = neighborhood(g, pre, ball_radius + 1);
    if (!is_connected_subset(g, lifted)) {
      rep.fail({{"stage", "branch_set"}, {"index", i}, {"reason", "lifted branch set is disconnected"}});
      return out;
    }
    if (lifted.intersects(all_sets)) {
      rep.fail({{"stage", "branch_set"}, {"index", i}, {"reason", "lifted branch sets overlap"}});
      return out;
    }
    all_sets |= lifted;
    sets.push_back(std::move(lifted));
  }

  std::vector<std::vector<Vertex>> paths;
  VertexSet used(n);
  std::vector<Edge> direct;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& qp = quotient_emb.branch_paths[e];
    const auto& su = sets[static_cast<std::size_t>(h.edges[e].first)];
    const auto& sv = sets[static_cast<std::size_t>(h.edges[e].second)];
    std::vector<Vertex> path;
    if (qp.size() == 2) {
      su.for_each([&](Vertex a) {
        if (!path.empty()) return;
        for (Vertex b : g.neighbors(a)) {
          const Edge key{std::min(a, b), std::max(a, b)};
          if (sv.contains(b) && std::find(direct.begin(), direct.end(), key) == direct.end()) {
            direct.push_back(key);
            path = {a, b};
            return;
          }
        }
      });
    } else {
      const std::vector<Vertex> inner(qp.begin() + 1, qp.end() - 1);
      const auto pre = s.preimage(VertexSet(qn, inner));
      const auto region = neighborhood(g, pre, ball_radius + 1) - all_sets - used;
      path = route_through(g, su, sv, region);
    }
    if (path.empty()) {
      rep.fail({{"stage", "branch_path"}, {"index", e}, {"reason", "no route through the lifted path region"}});
      return out;
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) used.insert(path[i]);
    paths.push_back(std::move(path));
  }

  FatEmbedding lifted;
  lifted.pattern = h;
  lifted.fatness = want;
  for (const auto& st : sets) lifted.branch_sets.push_back(st.members());
  lifted.branch_paths = std::move(paths);
  const auto check = verify_fat_embedding(g, lifted);
  rep.details["achieved_fatness"] = check.details.value("achieved_fatness", Json(nullptr));
  if (!check.holds) rep.fail({{"stage", "verify"}, {"report", check.witness}});
  out.embedding = std::move(lifted);
  return out;
}

namespace {

Json probe_entry(int stage, const Graph& g, const FatnessProbe& p) {
  return {{"stage", stage}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()},
          {"fatness", opt_json(p.value)}, {"exact", p.exact}};
}

}  // namespace

Report starving_minor_experiment(const Graph& g, const PatternGraph& h, int iterations, const ExperimentOptions& opts) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  Report rep;
  rep.check = "starving_minor";
  rep.params = {{"pattern", h.name}, {"iterations", iterations}, {"upper", opts.upper}};
  rep.seed = opts.search.seed;
  rep.mode = opts.search.mode == SearchMode::exhaustive ? "exhaustive" : "heuristic";

  std::vector<Graph> stages{g.root() ? g : g.with_root(0)};
  std::vector<Skeleton> skeletons;
  for (int i = 0; i < iterations; ++i) {
    skeletons.push_back(build_skeleton(stages.back(), {2, 2}));
    stages.push_back(skeletons.back().quotient);
  }
  std::vector<FatnessProbe> probes;
  Json table = Json::array();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    probes.push_back(probe_any(stages[i], h, opts.upper, opts.search));
    table.push_back(probe_entry(static_cast<int>(i), stages[i], probes.back()));
  }
  Json lifts = Json::array();
  for (std::size_t i = 1; i < stages.size(); ++i) {
    const auto& p = probes[i];
    if (!p.value || *p.value < 4 || !p.best) continue;
    const auto tgt = dieting_target(*p.value);
    auto emb = *p.best;
    emb.fatness = *p.value;
    const auto lift = lift_embedding(skeletons[i - 1], emb, 1, tgt);
    lifts.push_back({{"from_stage", i}, {"quotient_fatness", *p.value}, {"target", opt_json(tgt)},
                     {"certified", lift.report.holds}, {"report", lift.report.to_json()}});
    if (!lift.report.holds) rep.fail({{"from_stage", i}, {"lift", lift.report.to_json()}});
  }
  bool non_increasing = true;
  for (std::size_t i = 1; i < probes.size(); ++i)
    non_increasing = non_increasing && probes[i].value.value_or(-1) <= probes[i - 1].value.value_or(-1);
  const auto last = probes.back().value;
  rep.details["stages"] = table;
  rep.details["lifts"] = lifts;
  rep.details["non_increasing"] = non_increasing;
  rep.details["last_stage_no_5_fat"] = !last || *last < 5;
  rep.details["last_stage_at_most_4_fat"] = !last || *last <= 4;
  rep.notes.push_back("fatness values from heuristic or budget-limited searches are lower bounds");
  return rep;
}

Report mm_reduce_experiment(const Graph& g, const PatternGraph& h, int scale, const ExperimentOptions& opts) {
  if (scale < 1) throw std::invalid_argument("scale must be >= 1");
  Report rep;
  rep.check = "mm_reduce";
  rep.params = {{"pattern", h.name}, {"M", scale}};
  rep.seed = opts.search.seed;
  const Graph base = g.root() ? g : g.with_root(0);
  const auto s = build_skeleton(base, {scale, scale});
  const auto expansion = check_distance_expansion(s, 3);
  rep.details["distance_expansion"] = expansion.holds;
  if (!expansion.holds) rep.fail({{"stage", "distance_expansion"}, {"report", expansion.witness}});
  const auto r = search_any(s.quotient, h, 3, opts.search);
  rep.mode = r.mode;
  rep.details["quotient_vertices"] = s.quotient.vertex_count();
  rep.details["quotient_has_3_fat"] = r.embedding.has_value();
  rep.details["search_complete"] = r.complete;
  if (!r.embedding) return rep;
  const auto lift = lift_embedding(s, *r.embedding, scale / 2, mm_target(3, scale));
  rep.details["lift"] = lift.report.to_json();
  if (!lift.report.holds) rep.fail({{"stage", "lift"}, {"report", lift.report.witness}});
  if (lift.embedding) rep.witness = {{"quotient_embedding", r.embedding->to_json()}, {"lifted", lift.embedding->to_json()}};
  return rep;
}

Report hammer_sweep(const std::vector<HammerCase>& cases, const ExperimentOptions& opts) {
  Report rep;
  rep.check = "hammer_sweep";
  rep.params = {{"cases", Json::array()}};
  rep.seed = opts.search.seed;
  const auto theta = PatternGraph::named("theta3");
  Json rows = Json::array();
  for (const auto& c : cases) {
    rep.params["cases"].push_back({{"lambda", c.lambda}, {"k", c.k}, {"dist", c.dist}});
    const Graph g = gen_hammer(c.lambda, c.k, c.dist);
    auto base_opts = opts.search;
    base_opts.mode = SearchMode::exhaustive;
    base_opts.vertex_cap = 64;
    Json row = {{"lambda", c.lambda}, {"k", c.k}, {"dist", c.dist}, {"vertices", g.vertex_count()}};
    bool ok = true;

    const auto base3 = find_fat_minor(g, theta, 3, base_opts);
    const bool no3 = base3.complete && !base3.embedding;
    row["base_core_vertices"] = base3.core_vertices;
    row["base_3_fat_found"] = base3.embedding.has_value();
    row["base_search_complete"] = base3.complete;
    row["base_search_nodes"] = base3.nodes;
    ok = ok && no3;

    const auto s = build_skeleton(g, {c.lambda, c.k});
    const auto q2 = search_any(s.quotient, theta, 2, base_opts);
    row["quotient_vertices"] = s.quotient.vertex_count();
    row["quotient_2_fat_found"] = q2.embedding.has_value();
    ok = ok && q2.embedding.has_value();
    if (q2.embedding) {
      const int radius = std::max(1, std::min(c.lambda, c.k) / 2);
      const auto lift = lift_embedding(s, *q2.embedding, radius, 2);
      row["lift"] = lift.report.to_json();
      const auto achieved = lift.report.details.value("achieved_fatness", Json(nullptr));
      const bool valid = lift.report.holds;
      const bool tight = achieved.is_number() && achieved.get<int>() <= 2;
      row["lift_valid"] = valid;
      row["lift_at_most_2_fat"] = tight;
      ok = ok && valid && tight;
      row["quotient_embedding"] = q2.embedding->to_json();
    }
    row["holds"] = ok;
    if (!ok) rep.fail(row);
    rows.push_back(std::move(row));
  }
  rep.details["cases"] = rows;
  return rep;
}

}  // namespace coarse
