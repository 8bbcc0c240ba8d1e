#include <doctest.h>

#include "coarse/fat_minor.hpp"
#include "coarse/generators.hpp"
#include "coarse/rng.hpp"
#include "support/minor_oracle.hpp"

using namespace coarse;

namespace {

FatEmbedding triangle_in_c8(int m) {
  FatEmbedding e;
  e.pattern = PatternGraph::named("c3");
  e.fatness = m;
  e.branch_sets = {{0}, {3}, {6}};
  e.branch_paths = {{0, 1, 2, 3}, {3, 4, 5, 6}, {6, 7, 0}};
  // pattern c3 edges are (0,1), (1,2), (2,0)
  return e;
}

FatEmbedding theta_in_k4(int m) {
  FatEmbedding e;
  e.pattern = PatternGraph::named("theta3");
  e.fatness = m;
  e.branch_sets = {{0}, {1}};
  e.branch_paths = {{0, 1}, {0, 2, 1}, {0, 3, 1}};
  return e;
}

Graph random_small(CounterRng& rng, int lo, int hi, std::uint64_t seed) {
  const int n = rng.uniform_int(lo, hi);
  if (rng.below(3) == 0) return gen_quasi_tree(n, 3, 2, seed);
  return gen_gnp_connected(n, 0.3 + 0.4 * rng.uniform01(), seed);
}

}  // namespace

TEST_CASE("fat embedding verification examples") {
  const Graph c8 = gen_cycle(8);
  REQUIRE(PatternGraph::named("c3").edges == std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
  CHECK(verify_fat_embedding(c8, triangle_in_c8(0)).holds);
  CHECK(verify_fat_embedding(c8, triangle_in_c8(1)).holds);
  const auto r2 = verify_fat_embedding(c8, triangle_in_c8(2));
  CHECK_FALSE(r2.holds);
  CHECK(r2.details["achieved_fatness"] == 1);
  CHECK(achieved_fatness(c8, triangle_in_c8(0)) == 1);

  const Graph k4 = gen_complete(4);
  CHECK(verify_fat_embedding(k4, theta_in_k4(0)).holds);
  CHECK_FALSE(verify_fat_embedding(k4, theta_in_k4(1)).holds);
  CHECK(achieved_fatness(k4, theta_in_k4(0)) == 0);
  // the branch sets themselves are adjacent, which no rule exempts
  CHECK_FALSE(verify_fat_embedding(k4, theta_in_k4(1), IncidenceRule::lenient).holds);

  SUBCASE("structural defects") {
    auto e = theta_in_k4(0);
    e.branch_sets = {{0, 2}, {1}};
    CHECK_FALSE(verify_fat_embedding(k4, e).holds);
    CHECK_FALSE(achieved_fatness(k4, e).has_value());
    e = theta_in_k4(0);
    e.branch_paths[2] = {0, 2, 1};
    CHECK_FALSE(verify_fat_embedding(k4, e).holds);
    e = theta_in_k4(0);
    e.branch_paths[1] = {0, 1};
    e.branch_paths[2] = {0, 3, 1};
    CHECK_FALSE(verify_fat_embedding(k4, e).holds);  // one G-edge used twice
    e = theta_in_k4(0);
    e.branch_paths[1] = {1, 2, 0};
    CHECK_FALSE(verify_fat_embedding(k4, e).holds);  // wrong direction
  }
}

TEST_CASE("embedding JSON round trip") {
  const auto e = triangle_in_c8(1);
  const auto back = FatEmbedding::from_json(e.to_json());
  CHECK(back.to_json() == e.to_json());
  CHECK(verify_fat_embedding(gen_cycle(8), back).holds);
}

TEST_CASE("fat minor search examples") {
  for (int n : {3, 5, 9}) {
    const auto r = find_fat_minor(gen_cycle(n), PatternGraph::named("theta3"), 0);
    CHECK(r.complete);
    CHECK_FALSE(r.embedding.has_value());
  }
  const auto k4 = gen_complete(4);
  CHECK(find_fat_minor(k4, PatternGraph::named("theta3"), 0).embedding.has_value());
  CHECK(find_fat_minor(k4, PatternGraph::named("k4"), 0).embedding.has_value());
  const auto probe = max_fatness(k4, PatternGraph::named("theta3"), 3);
  REQUIRE(probe.value.has_value());
  CHECK(*probe.value == 0);
  CHECK(probe.exact);

  // a long cycle holds a fat triangle
  const auto c12 = find_fat_minor(gen_cycle(12), PatternGraph::named("c3"), 2);
  REQUIRE(c12.embedding);
  CHECK(achieved_fatness(gen_cycle(12), *c12.embedding) >= 2);
  CHECK(find_fat_minor(gen_cycle(12), PatternGraph::named("c3"), 3).complete);

  // pendant trees hanging off a cycle do not affect the answer
  const Graph lollipop = Graph::from_edges(8, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {4, 6}, {6, 7}});
  const auto r = find_fat_minor(lollipop, PatternGraph::named("c3"), 0);
  CHECK(r.core_vertices == 3);
  CHECK(r.embedding.has_value());
}

TEST_CASE("heuristic search finds a 2-fat square in a grid") {
  const Graph grid = gen_grid(15, 15);
  MinorSearchOptions opts;
  opts.mode = SearchMode::heuristic;
  opts.seed = 1;
  const auto r = find_fat_minor(grid, PatternGraph::named("c4"), 2, opts);
  REQUIRE(r.embedding.has_value());
  CHECK(verify_fat_embedding(grid, *r.embedding).holds);
  CHECK_THROWS_AS(find_fat_minor(grid, PatternGraph::named("c4"), 2), std::invalid_argument);
}

TEST_CASE("exhaustive search agrees with the brute-force oracle") {
  CounterRng rng(7, 0);
  int positives = 0, checks = 0;
  for (int t = 0; t < 36; ++t) {
    const std::string name = std::vector<std::string>{"theta3", "c3", "c4", "k4"}[static_cast<std::size_t>(t % 4)];
    const PatternGraph h = PatternGraph::named(name);
    const int hi = name == "theta3" || name == "c3" ? 7 : 6;
    const Graph g = random_small(rng, 4, hi, 500 + static_cast<std::uint64_t>(t));
    for (int m = 0; m <= 2; ++m) {
      const bool expect = oracle::has_fat_minor(g, h, m);
      MinorSearchOptions plain;
      plain.partition_shortcut = false;
      const auto a = find_fat_minor(g, h, m);
      const auto b = find_fat_minor(g, h, m, plain);
      INFO("pattern " << name << " m=" << m << " n=" << g.vertex_count());
      CHECK(a.complete);
      CHECK(b.complete);
      CHECK(a.embedding.has_value() == expect);
      CHECK(b.embedding.has_value() == expect);
      positives += expect;
      ++checks;
    }
  }
  CHECK(positives > 10);
  CHECK(checks - positives > 10);
}

TEST_CASE("found embeddings are monotone in the fatness") {
  CounterRng rng(8, 0);
  for (int t = 0; t < 20; ++t) {
    const Graph g = random_small(rng, 6, 12, 900 + static_cast<std::uint64_t>(t));
    for (const char* name : {"theta3", "c4"}) {
      const PatternGraph h = PatternGraph::named(name);
      bool previous = true;
      for (int m = 0; m <= 3; ++m) {
        const auto r = find_fat_minor(g, h, m);
        REQUIRE(r.complete);
        if (r.embedding) {
          CHECK(previous);
          CHECK(achieved_fatness(g, *r.embedding) >= m);
        }
        previous = r.embedding.has_value();
      }
    }
  }
}
