#pragma once

#include <algorithm>
#include <vector>

#include "coarse/fat_minor.hpp"
#include "support/oracles.hpp"

namespace oracle {

using namespace coarse;

// Brute force over every assignment of vertices to roles (branch set of a
// pattern vertex, interior of a pattern edge, or unused). Interiors must
// carry a walk order visiting each of their vertices once; direct edges are
// tried in every combination. Candidates are judged by the strict verifier.
inline bool has_fat_minor(const Graph& g, const PatternGraph& h, int m) {
  const int n = g.vertex_count();
  const int k = h.vertex_count;
  const int e_count = static_cast<int>(h.edges.size());
  const int roles = k + e_count + 1;
  std::vector<int> role(static_cast<std::size_t>(n), 0);

  auto ordered_interior = [&](std::vector<int> inner, const std::vector<int>& su,
                              const std::vector<int>& sv) -> std::vector<int> {
    std::sort(inner.begin(), inner.end());
    auto touches = [&](int v, const std::vector<int>& s) {
      return std::any_of(s.begin(), s.end(), [&](int a) { return g.has_edge(a, v); });
    };
    do {
      bool ok = touches(inner.front(), su) && touches(inner.back(), sv);
      for (std::size_t i = 0; ok && i + 1 < inner.size(); ++i) ok = g.has_edge(inner[i], inner[i + 1]);
      if (!ok) continue;
      int a = *std::find_if(su.begin(), su.end(), [&](int x) { return g.has_edge(x, inner.front()); });
      int b = *std::find_if(sv.begin(), sv.end(), [&](int x) { return g.has_edge(x, inner.back()); });
      std::vector<int> path{a};
      path.insert(path.end(), inner.begin(), inner.end());
      path.push_back(b);
      return path;
    } while (std::next_permutation(inner.begin(), inner.end()));
    return {};
  };

  auto judge = [&]() {
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(k)), inner(static_cast<std::size_t>(e_count));
    for (int v = 0; v < n; ++v) {
      const int r = role[static_cast<std::size_t>(v)];
      if (r == 0) continue;
      if (r <= k) sets[static_cast<std::size_t>(r - 1)].push_back(v);
      else inner[static_cast<std::size_t>(r - 1 - k)].push_back(v);
    }
    for (const auto& s : sets)
      if (s.empty() || !induced_connected(g, s)) return false;
    std::vector<std::vector<std::vector<int>>> options(static_cast<std::size_t>(e_count));
    for (int e = 0; e < e_count; ++e) {
      const auto& su = sets[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(e)].first)];
      const auto& sv = sets[static_cast<std::size_t>(h.edges[static_cast<std::size_t>(e)].second)];
      auto& opt = options[static_cast<std::size_t>(e)];
      if (inner[static_cast<std::size_t>(e)].empty()) {
        for (int a : su)
          for (int b : sv)
            if (g.has_edge(a, b)) opt.push_back({a, b});
      } else {
        auto p = ordered_interior(inner[static_cast<std::size_t>(e)], su, sv);
        if (!p.empty()) opt.push_back(p);
      }
      if (opt.empty()) return false;
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(e_count), 0);
    while (true) {
      FatEmbedding emb;
      emb.pattern = h;
      emb.fatness = m;
      emb.branch_sets = sets;
      for (int e = 0; e < e_count; ++e)
        emb.branch_paths.push_back(options[static_cast<std::size_t>(e)][pick[static_cast<std::size_t>(e)]]);
      if (verify_fat_embedding(g, emb).holds) return true;
      int e = 0;
      while (e < e_count && ++pick[static_cast<std::size_t>(e)] == options[static_cast<std::size_t>(e)].size())
        pick[static_cast<std::size_t>(e++)] = 0;
      if (e == e_count) return false;
    }
  };

  // odometer over role assignments
  while (true) {
    if (judge()) return true;
    int v = 0;
    while (v < n && ++role[static_cast<std::size_t>(v)] == roles) role[static_cast<std::size_t>(v++)] = 0;
    if (v == n) return false;
  }
}

}  // namespace oracle
