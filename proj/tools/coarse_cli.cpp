#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "coarse/bottleneck.hpp"
#include "coarse/fat_minor.hpp"
#include "coarse/generators.hpp"
#include "coarse/io.hpp"
#include "coarse/lift.hpp"
#include "coarse/quasi_tree.hpp"
#include "coarse/skeleton.hpp"

namespace {

using namespace coarse;

// Bad flags or unreadable input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string raw;
  std::optional<Graph> graph;
  std::optional<Skeleton> skeleton;
  std::optional<FatEmbedding> embedding;

  // The graph a graph-level command acts on: the base of a skeleton input.
  const Graph& base() const {
    if (graph) return *graph;
    if (skeleton) return skeleton->base;
    throw UsageError("input holds no graph");
  }
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_source(const std::string& path) {
  if (path.empty() || path == "-") return read_all(std::cin);
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  return read_all(f);
}

// Accepts Graph JSON, Skeleton JSON, a report carrying "graph", "skeleton"
// or "embedding" payloads, or an edge list.
Input load_input(const std::string& path) {
  Input in;
  in.raw = read_source(path);
  const auto first = in.raw.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw UsageError("empty input");
  if (in.raw[first] != '{') {
    in.graph = parse_edge_list(in.raw);
    return in;
  }
  Json j;
  try {
    j = Json::parse(in.raw);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON input: ") + e.what());
  }
  if (j.contains("vertex_count")) {
    in.graph = graph_from_json(j);
  } else if (j.contains("base") && j.contains("params")) {
    in.skeleton = skeleton_from_json(j);
  } else {
    if (j.contains("skeleton")) in.skeleton = skeleton_from_json(j.at("skeleton"));
    if (j.contains("graph")) in.graph = graph_from_json(j.at("graph"));
  }
  if (j.contains("embedding") && !j.at("embedding").is_null()) {
    try {
      in.embedding = FatEmbedding::from_json(j.at("embedding"));
    } catch (const Json::exception& e) {
      throw UsageError(std::string("malformed embedding: ") + e.what());
    }
  }
  if (!in.graph && !in.skeleton) throw UsageError("input holds neither a graph nor a skeleton");
  return in;
}

struct Global {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string in_path;
};

Json provenance(const std::string& command, const std::string& raw) {
  Json p;
  p["command"] = command;
  p["input_hash"] = raw.empty() ? Json(nullptr) : Json(fnv1a_hex(raw));
  p["version"] = kLibraryVersion;
  return p;
}

int emit(Json out, const std::string& command, const std::string& raw, bool holds) {
  out["provenance"] = provenance(command, raw);
  std::cout << out.dump(2) << "\n";
  return holds ? 0 : 1;
}

int emit_report(const Report& r, const std::string& command, const std::string& raw, Json extra = Json::object()) {
  Json out = r.to_json();
  for (auto& [k, v] : extra.items()) out[k] = v;
  return emit(std::move(out), command, raw, r.holds);
}

Json base_report(const std::string& check, Json params, std::optional<std::uint64_t> seed = std::nullopt) {
  Report r;
  r.check = check;
  r.params = std::move(params);
  r.seed = seed;
  return r.to_json();
}

// Runs fn(0..n-1) on up to `jobs` threads; results keep index order.
template <class T, class F>
std::vector<T> run_indexed(int jobs, std::size_t n, F fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), n);
  auto work = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
  if (workers > 0) work(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Skeleton need_skeleton(const Input& in, std::optional<int> lambda, std::optional<int> k) {
  if (lambda || k) {
    if (!lambda || !k) throw UsageError("--lambda and --k go together");
    return build_skeleton(in.base(), {*lambda, *k});
  }
  if (in.skeleton) return *in.skeleton;
  throw UsageError("input holds no skeleton; pass --lambda and --k");
}

// gen

struct GenArgs {
  std::string family;
  std::string spec;
  std::optional<int> n, rows, cols, leaves, chord_len, chords, lambda, k, dist, subdivide;
  std::optional<double> p;
  std::string pattern;
};

int run_gen(const GenArgs& a, const Global& g) {
  Json spec;
  if (!a.spec.empty()) {
    try {
      spec = Json::parse(a.spec);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("malformed --spec: ") + e.what());
    }
  } else {
    if (a.family.empty()) throw UsageError("gen needs --family or --spec");
    spec["family"] = a.family;
    auto put = [&](const char* key, const std::optional<int>& v) {
      if (v) spec[key] = *v;
    };
    put("n", a.n);
    put("rows", a.rows);
    put("cols", a.cols);
    put("leaves", a.leaves);
    put("chord_len", a.chord_len);
    put("chords", a.chords);
    put("lambda", a.lambda);
    put("k", a.k);
    put("dist", a.dist);
    put("subdivide", a.subdivide);
    if (a.p) spec["p"] = *a.p;
    if (!a.pattern.empty()) spec["pattern"] = a.pattern;
    spec["seed"] = g.seed;
  }
  const Graph graph = gen(spec);
  Json out = base_report("gen", spec, spec.value("seed", std::uint64_t{0}));
  out["details"] = {{"vertex_count", graph.vertex_count()}, {"edge_count", graph.edges().size()}};
  out["graph"] = graph_to_json(graph);
  return emit(std::move(out), "gen", "", true);
}

// skeleton / compose

int run_skeleton(int lambda, int k, std::optional<int> root, const std::string& dot_path, const Global& g) {
  const Input in = load_input(g.in_path);
  Graph base = in.base();
  if (root) base = base.with_root(*root);
  if (!base.root()) throw UsageError("graph has no root; pass --root");
  const Skeleton s = build_skeleton(base, {lambda, k});
  if (!dot_path.empty()) {
    std::ofstream f(dot_path);
    if (!f) throw UsageError("cannot write " + dot_path);
    f << skeleton_to_dot(s);
  }
  Json out = base_report("skeleton", {{"lambda", lambda}, {"k", k}, {"root", *base.root()}});
  out["details"] = {{"base_vertices", base.vertex_count()},
                    {"blocks", s.block_count()},
                    {"quotient_edges", s.quotient.edges().size()}};
  out["skeleton"] = skeleton_json(s);
  return emit(std::move(out), "skeleton", in.raw, true);
}

int run_compose(int n, int k2, const Global& g) {
  const Input in = load_input(g.in_path);
  if (!in.skeleton) throw UsageError("compose needs a skeleton on input");
  const auto c = compose_skeleton(*in.skeleton, n, k2);
  Json out = base_report("compose", {{"lambda", in.skeleton->params.lambda},
                                     {"k", in.skeleton->params.k},
                                     {"n", n},
                                     {"k2", k2}});
  out["details"] = {{"inner_blocks", in.skeleton->block_count()}, {"outer_blocks", c.outer.block_count()}};
  out["composite_block_of"] = c.block_of;
  out["skeleton"] = skeleton_json(c.outer);
  return emit(std::move(out), "compose", in.raw, true);
}

// check

struct CheckArgs {
  bool facts = false, qi = false, lemma9 = false;
  std::optional<int> expansion, composition, contraction, quasi_tree;
  std::optional<int> lambda, k;
};

int run_check(const CheckArgs& a, const Global& g) {
  const int chosen = int(a.facts) + int(a.qi) + int(a.lemma9) + int(a.expansion.has_value()) +
                     int(a.composition.has_value()) + int(a.contraction.has_value()) + int(a.quasi_tree.has_value());
  if (chosen != 1) throw UsageError("check needs exactly one of --facts, --qi, --lemma9, --expansion, --composition, "
                                    "--contraction, --quasi-tree");
  const Input in = load_input(g.in_path);
  if (a.quasi_tree) {
    SamplingOptions so;
    so.seed = g.seed;
    return emit_report(quasi_tree_pipeline(in.base(), *a.quasi_tree, so), "check", in.raw);
  }
  if (a.composition) {
    const Skeleton s = need_skeleton(in, a.lambda, a.k);
    return emit_report(verify_composition_identity(s.base, s.params.lambda, s.params.k, *a.composition), "check",
                       in.raw);
  }
  const Skeleton s = need_skeleton(in, a.lambda, a.k);
  if (a.facts) return emit_report(check_skeleton_facts(s), "check", in.raw);
  if (a.qi) {
    SamplingOptions so;
    so.seed = g.seed;
    return emit_report(verify_natural_map_qi(s, so), "check", in.raw);
  }
  if (a.lemma9) return emit_report(check_no_edge_disjointness(s), "check", in.raw);
  if (a.expansion) return emit_report(check_distance_expansion(s, *a.expansion), "check", in.raw);
  return emit_report(check_contraction_bounds(s, {*a.contraction}), "check", in.raw);
}

// bottleneck

int run_bottleneck(bool edge, bool fat, std::optional<int> m, int n, const std::string& mode, const Global& g) {
  if (edge == fat) throw UsageError("bottleneck needs exactly one of --edge, --fat");
  const Input in = load_input(g.in_path);
  BottleneckOptions opts;
  opts.seed = g.seed;
  if (edge) return emit_report(edge_bottleneck_check(in.base(), n, parse_edge_strategy(mode), opts), "bottleneck", in.raw);
  if (!m) throw UsageError("bottleneck --fat needs --m");
  return emit_report(fat_bottleneck_check(in.base(), *m, n, parse_fat_strategy(mode), opts), "bottleneck", in.raw);
}

// minor / lift

struct MinorArgs {
  std::string pattern = "theta3";
  int m = 0;
  std::string mode = "exhaustive";
  std::uint64_t budget = 0;
  int cap = 14;
  std::optional<int> max_fatness;
  std::string on;  // base | quotient
};

int run_minor(const MinorArgs& a, const Global& g) {
  const Input in = load_input(g.in_path);
  const PatternGraph h = PatternGraph::named(a.pattern);
  std::string on = a.on;
  if (on.empty()) on = in.skeleton && !in.graph ? "quotient" : "base";
  if (on != "base" && on != "quotient") throw UsageError("--on must be base or quotient");
  if (on == "quotient" && !in.skeleton) throw UsageError("--on quotient needs a skeleton on input");
  const Graph& target = on == "quotient" ? in.skeleton->quotient : in.base();
  MinorSearchOptions opts;
  opts.mode = parse_search_mode(a.mode);
  opts.budget = a.budget;
  opts.seed = g.seed;
  opts.vertex_cap = a.cap;
  Json params = {{"pattern", a.pattern}, {"on", on}, {"mode", a.mode}, {"budget", a.budget}, {"vertex_cap", a.cap}};
  Json out;
  bool holds = false;
  std::optional<FatEmbedding> emb;
  if (a.max_fatness) {
    params["upper"] = *a.max_fatness;
    const auto probe = max_fatness(target, h, *a.max_fatness, opts);
    out = base_report("max_fatness", params, g.seed);
    out["mode"] = probe.exact ? "exhaustive" : a.mode;
    out["details"] = probe.to_json();
    out["details"].erase("best");
    holds = probe.value.has_value();
    emb = probe.best;
  } else {
    params["m"] = a.m;
    const auto res = find_fat_minor(target, h, a.m, opts);
    out = base_report("fat_minor", params, g.seed);
    out["mode"] = res.mode;
    out["details"] = res.to_json();
    out["details"].erase("embedding");
    holds = res.embedding.has_value();
    emb = res.embedding;
  }
  out["holds"] = holds;
  out["witness"] = emb ? emb->to_json() : Json(nullptr);
  out["embedding"] = emb ? emb->to_json() : Json(nullptr);
  if (on == "quotient") out["skeleton"] = skeleton_json(*in.skeleton);
  else out["graph"] = graph_to_json(in.base());
  return emit(std::move(out), "minor", in.raw, holds);
}

int run_lift(int ball, std::optional<int> target, const Global& g) {
  const Input in = load_input(g.in_path);
  if (!in.skeleton || !in.embedding) throw UsageError("lift needs a skeleton and a quotient embedding on input");
  const auto res = lift_embedding(*in.skeleton, *in.embedding, ball, target);
  Json extra;
  extra["embedding"] = res.embedding ? res.embedding->to_json() : Json(nullptr);
  extra["graph"] = graph_to_json(in.skeleton->base);
  return emit_report(res.report, "lift", in.raw, extra);
}

// experiment

struct ExperimentArgs {
  bool starving = false, hammer = false, mm_reduce = false;
  std::optional<int> m;
  int iterations = 2;
  std::string pattern = "theta3";
  std::string mode = "exhaustive";
  std::uint64_t budget = 0;
  int cap = 14;
  int upper = 6;
  std::vector<std::string> cases;
};

HammerCase parse_case(const std::string& s) {
  HammerCase c;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(s);
  if (!(in >> c.lambda >> sep1 >> c.k >> sep2 >> c.dist) || sep1 != ',' || sep2 != ',')
    throw UsageError("hammer case must look like lambda,k,dist: " + s);
  return c;
}

int run_experiment(const ExperimentArgs& a, const Global& g) {
  const int chosen = int(a.starving) + int(a.hammer) + int(a.mm_reduce);
  if (chosen != 1) throw UsageError("experiment needs exactly one of --starving, --mm-reduce, --hammer-sweep");
  if (a.mm_reduce != a.m.has_value()) throw UsageError("--mm-reduce needs --m M, and --m belongs to --mm-reduce");
  ExperimentOptions opts;
  opts.search.mode = parse_search_mode(a.mode);
  opts.search.budget = a.budget;
  opts.search.seed = g.seed;
  opts.search.vertex_cap = a.cap;
  opts.upper = a.upper;
  if (a.hammer) {
    std::vector<HammerCase> cases;
    for (const auto& s : a.cases) cases.push_back(parse_case(s));
    if (cases.empty()) cases = {{2, 2, 8}, {3, 3, 16}};
    const auto parts =
        run_indexed<Report>(g.jobs, cases.size(), [&](std::size_t i) { return hammer_sweep({cases[i]}, opts); });
    Report all;
    all.check = "hammer_sweep";
    all.mode = a.mode;
    all.seed = g.seed;
    all.params["cases"] = Json::array();
    all.details["cases"] = Json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      all.params["cases"].push_back({{"lambda", cases[i].lambda}, {"k", cases[i].k}, {"dist", cases[i].dist}});
      all.details["cases"].push_back(parts[i].to_json());
      if (!parts[i].holds) all.fail(parts[i].witness);
    }
    return emit_report(all, "experiment", "");
  }
  const Input in = load_input(g.in_path);
  const PatternGraph h = PatternGraph::named(a.pattern);
  if (a.starving) return emit_report(starving_minor_experiment(in.base(), h, a.iterations, opts), "experiment", in.raw);
  return emit_report(mm_reduce_experiment(in.base(), h, *a.m, opts), "experiment", in.raw);
}

// export

int run_export(bool dot, bool json, const std::string& out_path, const Global& g) {
  if (dot == json) throw UsageError("export needs exactly one of --dot, --json");
  const Input in = load_input(g.in_path);
  std::string text;
  if (dot) text = in.skeleton ? skeleton_to_dot(*in.skeleton) : graph_to_dot(in.base());
  else text = (in.skeleton ? skeleton_json(*in.skeleton) : graph_to_json(in.base())).dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarse skeletons, bottlenecks and fat minors on finite graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_option("--seed", global.seed, "Seed for randomised steps");
  app.add_option("--jobs", global.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--in", global.in_path, "Input file (default: standard input)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph");
  gen_cmd->add_option("--family", gen_args.family, "path|cycle|grid|star|complete|random_tree|quasi_tree|"
                                                   "gnp_connected|hammer|pattern");
  gen_cmd->add_option("--spec", gen_args.spec, "Full generator spec as JSON");
  gen_cmd->add_option("--n", gen_args.n);
  gen_cmd->add_option("--rows", gen_args.rows);
  gen_cmd->add_option("--cols", gen_args.cols);
  gen_cmd->add_option("--leaves", gen_args.leaves);
  gen_cmd->add_option("--chord-len", gen_args.chord_len);
  gen_cmd->add_option("--chords", gen_args.chords);
  gen_cmd->add_option("--p", gen_args.p);
  gen_cmd->add_option("--lambda", gen_args.lambda);
  gen_cmd->add_option("--k", gen_args.k);
  gen_cmd->add_option("--dist", gen_args.dist);
  gen_cmd->add_option("--pattern", gen_args.pattern);
  gen_cmd->add_option("--subdivide", gen_args.subdivide);

  int sk_lambda = 1, sk_k = 1;
  std::optional<int> sk_root;
  std::string sk_dot;
  auto* sk_cmd = app.add_subcommand("skeleton", "Build the (lambda,k) skeleton");
  sk_cmd->add_option("--lambda", sk_lambda)->required()->check(CLI::PositiveNumber);
  sk_cmd->add_option("--k", sk_k)->required()->check(CLI::PositiveNumber);
  sk_cmd->add_option("--root", sk_root, "Override the root");
  sk_cmd->add_option("--dot", sk_dot, "Also write the quotient as DOT");

  int co_n = 2, co_k2 = 1;
  auto* co_cmd = app.add_subcommand("compose", "Skeleton of a skeleton's quotient");
  co_cmd->add_option("--n", co_n)->required()->check(CLI::PositiveNumber);
  co_cmd->add_option("--k2", co_k2)->required()->check(CLI::PositiveNumber);

  CheckArgs check_args;
  auto* ch_cmd = app.add_subcommand("check", "Check skeleton properties");
  ch_cmd->add_flag("--facts", check_args.facts, "Bipartite, connected, simple, backed edges and depths");
  ch_cmd->add_flag("--qi", check_args.qi, "Natural map distortion bounds");
  ch_cmd->add_flag("--lemma9", check_args.lemma9, "Non-adjacent blocks are far apart");
  ch_cmd->add_option("--expansion", check_args.expansion, "Quotient distance N expands to min(lambda,k)(N-1)");
  ch_cmd->add_option("--composition", check_args.composition, "Composition identity with outer scale N");
  ch_cmd->add_option("--contraction", check_args.contraction, "Small and big contraction bounds for n");
  ch_cmd->add_option("--quasi-tree", check_args.quasi_tree, "Quasi-tree verdict at scale M");
  ch_cmd->add_option("--lambda", check_args.lambda);
  ch_cmd->add_option("--k", check_args.k);

  bool bn_edge = false, bn_fat = false;
  std::optional<int> bn_m;
  int bn_n = 1;
  std::string bn_mode = "exhaustive";
  auto* bn_cmd = app.add_subcommand("bottleneck", "Edge or fat bottleneck check");
  bn_cmd->add_flag("--edge", bn_edge);
  bn_cmd->add_flag("--fat", bn_fat);
  bn_cmd->add_option("--m", bn_m)->check(CLI::NonNegativeNumber);
  bn_cmd->add_option("--n", bn_n)->check(CLI::PositiveNumber);
  bn_cmd->add_option("--mode", bn_mode, "exhaustive|vertex_pairs|sampled");

  MinorArgs minor_args;
  auto* mi_cmd = app.add_subcommand("minor", "Search for an M-fat minor");
  mi_cmd->add_option("--pattern", minor_args.pattern, "theta3|c3|c4|k4");
  mi_cmd->add_option("--m", minor_args.m)->check(CLI::NonNegativeNumber);
  mi_cmd->add_option("--mode", minor_args.mode, "exhaustive|heuristic");
  mi_cmd->add_option("--budget", minor_args.budget, "Node limit or restart count");
  mi_cmd->add_option("--vertex-cap", minor_args.cap)->check(CLI::Range(1, 64));
  mi_cmd->add_option("--max-fatness", minor_args.max_fatness, "Largest fatness up to U")->check(CLI::NonNegativeNumber);
  mi_cmd->add_option("--on", minor_args.on, "base|quotient");

  int lift_ball = 1;
  std::optional<int> lift_target;
  auto* li_cmd = app.add_subcommand("lift", "Lift a quotient embedding to the base graph");
  li_cmd->add_option("--ball", lift_ball)->required()->check(CLI::NonNegativeNumber);
  li_cmd->add_option("--target", lift_target, "Fatness the lift must reach")->check(CLI::NonNegativeNumber);

  ExperimentArgs ex_args;
  auto* ex_cmd = app.add_subcommand("experiment", "Run an experiment suite");
  ex_cmd->add_flag("--starving", ex_args.starving);
  ex_cmd->add_option("--iterations", ex_args.iterations)->check(CLI::PositiveNumber);
  ex_cmd->add_flag("--mm-reduce", ex_args.mm_reduce);
  ex_cmd->add_option("--m", ex_args.m, "Scale M for --mm-reduce")->check(CLI::PositiveNumber);
  ex_cmd->add_flag("--hammer-sweep", ex_args.hammer);
  ex_cmd->add_option("--case", ex_args.cases, "lambda,k,dist (repeatable)");
  ex_cmd->add_option("--pattern", ex_args.pattern);
  ex_cmd->add_option("--mode", ex_args.mode);
  ex_cmd->add_option("--budget", ex_args.budget);
  ex_cmd->add_option("--vertex-cap", ex_args.cap)->check(CLI::Range(1, 64));
  ex_cmd->add_option("--upper", ex_args.upper)->check(CLI::NonNegativeNumber);

  bool ex_dot = false, ex_json = false;
  std::string ex_out;
  auto* exp_cmd = app.add_subcommand("export", "Write a graph or skeleton as DOT or JSON");
  exp_cmd->add_flag("--dot", ex_dot);
  exp_cmd->add_flag("--json", ex_json);
  exp_cmd->add_option("--out", ex_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) return run_gen(gen_args, global);
    if (*sk_cmd) return run_skeleton(sk_lambda, sk_k, sk_root, sk_dot, global);
    if (*co_cmd) return run_compose(co_n, co_k2, global);
    if (*ch_cmd) return run_check(check_args, global);
    if (*bn_cmd) return run_bottleneck(bn_edge, bn_fat, bn_m, bn_n, bn_mode, global);
    if (*mi_cmd) return run_minor(minor_args, global);
    if (*li_cmd) return run_lift(lift_ball, lift_target, global);
    if (*ex_cmd) return run_experiment(ex_args, global);
    if (*exp_cmd) return run_export(ex_dot, ex_json, ex_out, global);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
