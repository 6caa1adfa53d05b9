// Command-line front end for the dht library.

#include <chrono>
#include <cstdlib>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dht/dht.hpp"

using namespace dht;

namespace {

struct Budgets {
  std::size_t cubes = kDefaultCubeBudget;
  std::size_t bfs_vertex_cap = 9;
  double time_limit_s = 1800;
};

struct GlobalOptions {
  std::string format = "human";
  bool timing = false;
  Budgets budgets;
};

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (*end || x == 0) throw Error(Errc::InvalidParameter, std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

double env_seconds(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  double x = std::strtod(v, &end);
  if (*end || !(x > 0)) throw Error(Errc::InvalidParameter, std::string(name) + " must be a positive number");
  return x;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidParameter, "expected comma-separated integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw Error(Errc::InvalidParameter, "empty integer list");
  return out;
}

std::vector<std::string> parse_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ',');) out.push_back(t);
  return out;
}

std::string int_str(const Int& x) { return x.str(); }

Json ints_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_str(x));
  return a;
}

Json group_json(const HomologyGroup& g) {
  return {{"group", g.str()}, {"rank", g.rank}, {"torsion", ints_json(g.torsion)}};
}

Json verdict_json(const Verdict& v) {
  Json j{{"ok", v.ok}};
  if (!v.ok) j["reason"] = v.describe();
  return j;
}

Json graph_summary(const Graph& g) {
  return {{"vertices", g.size()}, {"edges", g.edge_count()}, {"hash", graph_hash(g)}};
}

void write_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_file(path, dump(j));
}

// ---- per-command state filled by CLI11 ----------------------------------

struct GraphCmd {
  std::string in, grid, labeled_cycle, out;
  int cycle = 0, path = 0;
  bool edge_list = false;
};

struct TowerCmd {
  std::string seed, out;
  int levels = 2;
};

struct QuotientCmd {
  std::string graph, out, certificate;
  int param = 0;
};

struct ContractCmd {
  std::string graph, grid, method = "constructive", fixed, out;
};

struct NullCmd {
  std::string map, method = "tsfree", contraction, out, word_tree;
  double sample = 0.05;
  std::uint64_t seed = 1;
};

struct HomologyCmd {
  std::string graph, export_boundary;
  std::vector<int> dims{1};
};

struct CubesCmd {
  std::string graph;
  int dim = 1;
  bool list = false;
};

struct PsiCmd {
  std::string map;
};

struct GenCmd {
  std::string seed, walk, out;
  int n = 1;
};

struct VerifyCmd {
  std::string file;
  bool based = false, contraction = false;
};

struct IdentCmd {
  std::string seed, walk, which = "all";
  int n = 1;
};

struct A1Cmd {
  std::string graph, mode = "abelianized", root;
};

Graph load_plain(const std::string& path) { return load_graph(path).graph; }

std::vector<VertexId> seed_for(const Graph& g, const std::string& walk) {
  if (!walk.empty()) return seed_walk(g, parse_labels(walk));
  auto seeds = cycle_seeds(g, 1);
  if (seeds.empty()) throw Error(Errc::SeedNotClosedWalk, "seed graph has no cycle");
  return seeds.front();
}

Json walk_json(const Graph& g, const std::vector<VertexId>& w) {
  Json a = Json::array();
  for (VertexId v : w) a.push_back(g.label(v));
  return a;
}

/// Contraction of a graph without asking the user how: trees by pruning,
/// everything else by the breadth-first oracle.
std::optional<Contraction> any_contraction(const Graph& g, const Budgets& b, Report& r) {
  if (g.is_tree()) return tree_contraction(g, 0);
  auto res = brute_force_contractibility(g, b.bfs_vertex_cap);
  r.budget["bfs_states"] = res.explored;
  if (res.status == ContractibilityResult::Status::Unknown) throw Error(Errc::CapExceeded, res.note);
  return res.witness;
}

// ---- commands -----------------------------------------------------------

void run_graph(const GraphCmd& c, Report& r) {
  Graph g;
  int sources = !c.in.empty() + !c.grid.empty() + !c.labeled_cycle.empty() + (c.cycle > 0) + (c.path > 0);
  if (sources != 1) throw Error(Errc::InvalidParameter, "give exactly one of --in, --cycle, --path, --grid, --labeled-cycle");
  std::optional<VertexId> bp;
  if (!c.in.empty()) {
    auto d = load_graph(c.in);
    g = d.graph;
    bp = d.basepoint;
  } else if (c.cycle > 0) {
    g = cycle_graph(c.cycle);
  } else if (c.path > 0) {
    g = path_graph(c.path);
  } else if (!c.grid.empty()) {
    g = grid_graph(GridSpec::box(parse_ints(c.grid)));
  } else {
    g = labeled_cycle(parse_labels(c.labeled_cycle));
  }
  r.results = graph_summary(g);
  r.results["tree"] = g.is_tree();
  r.results["girth_at_least_5"] = girth_at_least_5(g);
  r.results["diameter"] = g.diameter();
  if (!c.out.empty()) write_file(c.out, c.edge_list ? format_edge_list(g) : dump(graph_json(g, bp)));
}

void run_tower(const TowerCmd& c, Report& r) {
  Graph g1 = load_plain(c.seed);
  Tower tw = build_tower(g1, c.levels);
  Json levels = Json::array();
  for (int k = 1; k <= tw.height(); ++k) {
    Json l = graph_summary(tw.level(k));
    l["level"] = k;
    levels.push_back(std::move(l));
  }
  r.results["levels"] = std::move(levels);
  write_json(c.out, tower_json(tw, c.levels));
}

void run_quotient(const QuotientCmd& c, bool is_cone, const Budgets& b, Report& r) {
  Graph g = load_plain(c.graph);
  LabeledQuotient q = is_cone ? cone(g, c.param) : suspension(g, c.param);
  r.results = graph_summary(q.result);
  write_json(c.out, graph_json(q.result));
  if (c.certificate.empty()) return;
  std::optional<Contraction> h;
  if (is_cone) {
    h = cone_contraction(q);
  } else if (c.param == 2) {
    h = suspension_contraction_t2(q, 0);
  } else if (auto base = any_contraction(g, b, r)) {
    h = suspension_contraction(q, *base);
  }
  if (!h) {
    r.results["contraction"] = "none";
    r.fail_verification("base graph is not contractible, no certificate for t > 2");
    return;
  }
  Verdict v = verify_contraction(*h);
  r.results["contraction_length"] = h->length();
  r.results["contraction_verified"] = v.ok;
  if (!v.ok) r.fail_verification(v.describe());
  write_json(c.certificate, certificate_json(*h));
}

void run_contract(const ContractCmd& c, const Budgets& b, Report& r) {
  if (c.graph.empty() == c.grid.empty()) throw Error(Errc::InvalidParameter, "give exactly one of --graph, --grid");
  std::optional<Contraction> h;
  if (!c.grid.empty()) {
    if (c.method != "constructive") throw Error(Errc::InvalidParameter, "grids use the constructive method");
    h = grid_contraction(GridSpec::box(parse_ints(c.grid)));
    r.results["method"] = "grid";
  } else {
    Graph g = load_plain(c.graph);
    if (c.method == "constructive") {
      if (!g.is_tree()) throw Error(Errc::InvalidParameter, "no constructive contraction for this graph; try --method brute");
      h = tree_contraction(g, c.fixed.empty() ? 0 : g.id(c.fixed));
      r.results["method"] = "tree";
    } else if (c.method == "brute") {
      std::optional<VertexId> fixed;
      if (!c.fixed.empty()) fixed = g.id(c.fixed);
      auto res = brute_force_contractibility(g, b.bfs_vertex_cap, fixed);
      r.results["method"] = "brute";
      r.results["status"] = status_name(res.status);
      r.budget["bfs_vertex_cap"] = b.bfs_vertex_cap;
      r.budget["bfs_states"] = res.explored;
      if (res.status == ContractibilityResult::Status::Unknown) throw Error(Errc::CapExceeded, res.note);
      h = res.witness;
    } else {
      throw Error(Errc::InvalidParameter, "method must be constructive or brute");
    }
  }
  if (!h) return;
  Verdict v = verify_contraction(*h);
  r.results["length"] = h->length();
  r.results["verified"] = v.ok;
  if (!v.ok) r.fail_verification(v.describe());
  write_json(c.out, certificate_json(*h));
}

void run_nullhomotopy(const NullCmd& c, const Budgets& b, Report& r) {
  BasedMap f = load_grid_map(c.map).based();
  HomotopyCertificate h;
  if (c.method == "tsfree") {
    LiftOptions opt{c.sample, 3, c.seed};
    Lift l = lift(f, opt);
    h = nullhomotopy_tsfree(f, opt);
    r.results["tree_vertices"] = l.tree.graph.size();
    r.results["tree_depth"] = l.tree.depth();
    r.results["samples_checked"] = l.samples_checked;
    write_json(c.word_tree, word_tree_json(l));
  } else if (c.method == "contraction") {
    std::optional<Contraction> k;
    if (!c.contraction.empty()) k = load_certificate(c.contraction);
    else k = any_contraction(f.target, b, r);
    if (!k) throw Error(Errc::InvalidParameter, "target is not contractible");
    h = nullhomotopy_from_contraction(f, *k);
  } else {
    throw Error(Errc::InvalidParameter, "method must be tsfree or contraction");
  }
  Verdict v = verify_based(h);
  r.results["length"] = h.length();
  r.results["verified"] = v.ok;
  r.results["constant_end"] = is_constant_stage(h.stages.back());
  if (!v.ok) r.fail_verification(v.describe());
  write_json(c.out, certificate_json(h));
}

void run_homology(const HomologyCmd& c, const Budgets& b, Report& r) {
  Graph g = load_plain(c.graph);
  r.results["graph"] = graph_summary(g);
  Json groups = Json::array();
  std::size_t biggest = 0;
  for (int n : c.dims) {
    HomologyReport h = homology_report(g, n, b.cubes);
    Json j{{"dim", n}};
    j.update(group_json(h.group));
    j["basis_size"] = h.basis_size;
    j["upper_size"] = h.upper_size;
    j["lower_size"] = h.lower_size;
    groups.push_back(std::move(j));
    biggest = std::max({biggest, h.basis_size, h.upper_size});
  }
  r.results["homology"] = std::move(groups);
  r.budget["cube_budget"] = b.cubes;
  r.budget["largest_cube_list"] = biggest;
  if (!c.export_boundary.empty()) {
    const int n = c.dims.front();
    if (n < 1) throw Error(Errc::InvalidParameter, "boundary export needs dimension >= 1");
    std::ostringstream os;
    write_triplets(os, boundary_matrix(enumerate_cubes(g, n, true, b.cubes), enumerate_cubes(g, n - 1, true, b.cubes)));
    write_file(c.export_boundary, os.str());
  }
}

void run_cubes(const CubesCmd& c, const Budgets& b, Report& r) {
  Graph g = load_plain(c.graph);
  CubeList nd = enumerate_cubes(g, c.dim, true, b.cubes);
  r.results["dim"] = c.dim;
  r.results["all"] = count_cubes(g, c.dim, b.cubes);
  r.results["nondegenerate"] = nd.size();
  r.budget["cube_budget"] = b.cubes;
  if (c.list) {
    Json a = Json::array();
    for (std::size_t k = 0; k < nd.size(); ++k) a.push_back(cube_string(g, nd.at(k)));
    r.results["cubes"] = std::move(a);
  }
}

void run_psi(const PsiCmd& c, const Budgets& b, Report& r) {
  // any grid map whose chain is a cycle has a class; based maps always do
  GridMapDocument d = load_grid_map(c.map);
  const GridMap& f = d.map;
  Chain z = phi(f);
  if (!boundary(z).is_zero()) {
    r.fail_verification("phi(f) is not a cycle");
    return;
  }
  r.results["graph_hash"] = graph_hash(f.target);
  r.results["dim"] = f.dim();
  r.results["based"] = d.basepoint.has_value();
  r.budget["cube_budget"] = b.cubes;
  // the generator test is sparse and scales further than the explicit basis
  GeneratorCheck gc = check_generator(f.target, z, b.cubes);
  r.results["generates_infinite_cyclic"] = gc.generates;
  HomologyBasis hb(f.target, static_cast<int>(f.dim()), b.cubes);
  r.results["coordinates"] = ints_json(hb.coordinates(z));
  r.results["basis"] = group_json(hb.group());
  r.results["basis"]["cubes"] = hb.basis().size();
}

enum class GenKind { Gamma, F, G };

/// The common value of m on the boundary of its box, if there is one.
std::optional<VertexId> boundary_value(const GridMap& m) {
  std::optional<VertexId> v;
  for (std::size_t k = 0; k < m.domain.size(); ++k) {
    if (!m.domain.on_boundary(k)) continue;
    if (v && *v != m.values[k]) return std::nullopt;
    v = m.values[k];
  }
  return v;
}

void run_generator(const GenCmd& c, GenKind kind, Report& r) {
  Graph g1 = load_plain(c.seed);
  std::vector<VertexId> walk = seed_for(g1, c.walk);
  Tower tw = build_tower(g1, std::max(c.n, 1));
  r.results["seed"] = walk_json(g1, walk);
  r.results["n"] = c.n;
  GridMap m;
  std::optional<VertexId> bp;
  if (kind == GenKind::Gamma) {
    m = gamma(tw, walk, c.n);
    bp = boundary_value(m);
    Verdict fl = verify_flatness(m);
    r.results["flatness"] = verdict_json(fl);
    if (!fl.ok) r.fail_verification(fl.reason);
  } else {
    BasedMap f = kind == GenKind::F ? f_map(tw, walk, c.n) : g_map(tw, walk, c.n);
    bp = f.basepoint;
    m = f;
  }
  Verdict v = check_grid_map(m);
  r.results["domain"] = m.domain.describe();
  r.results["graph_map"] = verdict_json(v);
  r.results["phi_cycle"] = verify_hurewicz_cycle(m);
  if (!v.ok) r.fail_verification(v.describe());
  write_json(c.out, grid_map_json(m, bp));
}

void run_verify(const VerifyCmd& c, Report& r) {
  HomotopyCertificate h = load_certificate(c.file);
  const bool based = c.based || h.basepoint.has_value();
  Verdict v = based ? verify_based(h) : verify_homotopy(h);
  if (v.ok && c.contraction && !is_constant_stage(h.stages.back())) v = Verdict::fail("final stage is not constant");
  r.results["kind"] = based ? "based" : "free";
  r.results["domain_points"] = h.domain_size();
  r.results["target_hash"] = graph_hash(h.target);
  r.results["length"] = h.length();
  r.results["verdict"] = v.ok ? "PASS" : "FAIL";
  if (!v.ok) r.fail_verification(v.describe());
}

void run_identities(const IdentCmd& c, Report& r) {
  static const std::vector<std::string> kinds{"all", "surjectivity", "delta", "flatness", "seam"};
  if (std::find(kinds.begin(), kinds.end(), c.which) == kinds.end())
    throw Error(Errc::InvalidParameter, "--which must be one of all, surjectivity, delta, flatness, seam");
  Graph g1 = load_plain(c.seed);
  std::vector<VertexId> walk = seed_for(g1, c.walk);
  Tower tw = build_tower(g1, c.n);
  auto keep = [&](const std::string& name) {
    if (c.which == "all") return true;
    if (c.which == "delta") return name == "delta_sign";
    return name == c.which;
  };
  Json rows = Json::array();
  for (const auto& res : identity_suite(tw, walk, c.n)) {
    if (!keep(res.name)) continue;
    Json j{{"name", res.name}, {"ok", res.ok}};
    if (!res.detail.empty()) j["detail"] = res.detail;
    rows.push_back(std::move(j));
    if (!res.ok) r.fail_verification(res.name + " failed");
  }
  if (rows.empty()) throw Error(Errc::InvalidParameter, "no identity named '" + c.which + "' at this level");
  r.results["seed"] = walk_json(g1, walk);
  r.results["n"] = c.n;
  r.results["identities"] = std::move(rows);
}

void run_a1(const A1Cmd& c, Report& r) {
  Graph g = load_plain(c.graph);
  VertexId root = c.root.empty() ? 0 : g.id(c.root);
  if (c.mode == "presentation") {
    GroupPresentation p = a1_presentation(g, root);
    Json gens = Json::array(), rels = Json::array();
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      gens.push_back("g" + std::to_string(i) + " = (" + g.label(p.generators[i].first) + "," +
                     g.label(p.generators[i].second) + ")");
    for (const auto& w : p.relators) rels.push_back(p.word_string(w));
    r.results["generators"] = std::move(gens);
    r.results["relators"] = std::move(rels);
  } else if (c.mode == "abelianized") {
    r.results["abelianization"] = group_json(abelianized_a1(g));
  } else {
    throw Error(Errc::InvalidParameter, "mode must be presentation or abelianized");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete homotopy toolkit for graphs"};
  app.require_subcommand(1);
  GlobalOptions opt;
  try {
    opt.budgets.cubes = env_size("DHT_CUBE_BUDGET", opt.budgets.cubes);
    opt.budgets.bfs_vertex_cap = env_size("DHT_BFS_CAP", opt.budgets.bfs_vertex_cap);
    opt.budgets.time_limit_s = env_seconds("DHT_TIME_LIMIT", opt.budgets.time_limit_s);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(ExitStatus::Usage);
  }
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"human", "structured"}));
  app.add_flag("--timing", opt.timing, "Include elapsed time in the report");
  app.add_option("--cube-budget", opt.budgets.cubes, "Maximum cubes enumerated per dimension")->check(CLI::PositiveNumber);
  app.add_option("--bfs-cap", opt.budgets.bfs_vertex_cap, "Largest graph the contractibility search accepts");
  app.add_option("--time-limit", opt.budgets.time_limit_s, "Wall-clock limit in seconds")->check(CLI::PositiveNumber);

  GraphCmd gc;
  auto* s_graph = app.add_subcommand("graph", "Build or convert a graph");
  s_graph->add_option("--in", gc.in, "Edge list or structured graph file");
  s_graph->add_option("--cycle", gc.cycle, "Cycle graph Z_m");
  s_graph->add_option("--path", gc.path, "Path graph I_m");
  s_graph->add_option("--grid", gc.grid, "Grid I_a x I_b x ..., as a,b,...");
  s_graph->add_option("--labeled-cycle", gc.labeled_cycle, "Cycle through the given labels, as a,b,c,...");
  s_graph->add_option("--out", gc.out, "Output file");
  s_graph->add_flag("--edge-list", gc.edge_list, "Write an edge list instead of the structured format");

  TowerCmd tc;
  auto* s_tower = app.add_subcommand("tower", "Suspension tower over a seed graph");
  s_tower->add_option("--seed", tc.seed, "Seed graph G_1")->required();
  s_tower->add_option("--levels", tc.levels, "Top level n")->check(CLI::Range(1, 8));
  s_tower->add_option("--out", tc.out, "Write G_n with its label table");

  QuotientCmd cc, sc;
  auto* s_cone = app.add_subcommand("cone", "Cone C_s G");
  s_cone->add_option("--graph", cc.graph)->required();
  s_cone->add_option("--s", cc.param, "Cone height")->required();
  s_cone->add_option("--out", cc.out);
  s_cone->add_option("--certificate", cc.certificate, "Write the contraction certificate");
  auto* s_susp = app.add_subcommand("suspend", "Suspension S_t G");
  s_susp->add_option("--graph", sc.graph)->required();
  s_susp->add_option("--t", sc.param, "Suspension height")->required();
  s_susp->add_option("--out", sc.out);
  s_susp->add_option("--certificate", sc.certificate, "Write the contraction certificate");

  ContractCmd kc;
  auto* s_contract = app.add_subcommand("contract", "Contraction certificate for a graph");
  s_contract->add_option("--graph", kc.graph);
  s_contract->add_option("--grid", kc.grid, "Grid extents a,b,...");
  s_contract->add_option("--method", kc.method)->check(CLI::IsMember({"constructive", "brute"}));
  s_contract->add_option("--fixed", kc.fixed, "Vertex to keep fixed (tree root or retraction target)");
  s_contract->add_option("--out", kc.out);

  NullCmd nc;
  auto* s_null = app.add_subcommand("nullhomotopy", "Based nullhomotopy of a grid map");
  s_null->add_option("--map", nc.map, "Based grid map file")->required();
  s_null->add_option("--method", nc.method)->check(CLI::IsMember({"tsfree", "contraction"}));
  s_null->add_option("--contraction", nc.contraction, "Contraction certificate of the target");
  s_null->add_option("--sample", nc.sample, "Fraction of points re-lifted along random paths")->check(CLI::Range(0.0, 1.0));
  s_null->add_option("--rng-seed", nc.seed);
  s_null->add_option("--out", nc.out);
  s_null->add_option("--word-tree", nc.word_tree, "Dump the word tree");

  HomologyCmd hc;
  auto* s_hom = app.add_subcommand("homology", "Cubical homology groups");
  s_hom->add_option("--graph", hc.graph)->required();
  s_hom->add_option("--dim", hc.dims, "Degrees (repeatable)")->check(CLI::NonNegativeNumber);
  s_hom->add_option("--export-boundary", hc.export_boundary, "Sparse triplets of the boundary out of the first degree");

  CubesCmd ubc;
  auto* s_cubes = app.add_subcommand("cubes", "Count singular cubes");
  s_cubes->add_option("--graph", ubc.graph)->required();
  s_cubes->add_option("--dim", ubc.dim)->check(CLI::NonNegativeNumber);
  s_cubes->add_flag("--list", ubc.list, "List the nondegenerate cubes");

  PsiCmd pc;
  auto* s_psi = app.add_subcommand("psi", "Homology class of a based grid map");
  s_psi->add_option("--map", pc.map)->required();

  GenCmd gam, fm, gm;
  auto add_gen = [&](const char* name, const char* help, GenCmd& c) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--seed", c.seed, "Seed graph G_1")->required();
    s->add_option("--walk", c.walk, "Closed walk a,b,...,a (default: first cycle found)");
    s->add_option("--n", c.n, "Level")->check(CLI::Range(1, 8));
    s->add_option("--out", c.out, "Grid map file");
    return s;
  };
  auto* s_gamma = add_gen("gamma", "The map gamma_n", gam);
  auto* s_fmap = add_gen("fmap", "The onion map f_n", fm);
  auto* s_gmap = add_gen("gmap", "The map g_n", gm);

  VerifyCmd vc;
  auto* s_verify = app.add_subcommand("verify-certificate", "Check a certificate file");
  s_verify->add_option("file", vc.file)->required();
  s_verify->add_flag("--based", vc.based, "Require the based conditions");
  s_verify->add_flag("--contraction", vc.contraction, "Require a constant final stage");

  IdentCmd ic;
  auto* s_ident = app.add_subcommand("identities", "Run the generator identity checks");
  s_ident->add_option("--seed", ic.seed)->required();
  s_ident->add_option("--walk", ic.walk);
  s_ident->add_option("--n", ic.n)->check(CLI::Range(1, 8));
  s_ident->add_option("--which", ic.which);

  A1Cmd ac;
  auto* s_a1 = app.add_subcommand("a1", "Presentation of the first A-group");
  s_a1->add_option("--graph", ac.graph)->required();
  s_a1->add_option("--mode", ac.mode)->check(CLI::IsMember({"presentation", "abelianized"}));
  s_a1->add_option("--root", ac.root, "Root vertex of the spanning tree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitStatus::Usage);
  }

  Report r;
  for (int i = 1; i < argc; ++i) r.command += (i > 1 ? " " : "") + std::string(argv[i]);
  const ReportFormat fmt = opt.format == "structured" ? ReportFormat::Structured : ReportFormat::Human;
  const Budgets& b = opt.budgets;

  auto body = [&]() {
    try {
      if (*s_graph) run_graph(gc, r);
      else if (*s_tower) run_tower(tc, r);
      else if (*s_cone) run_quotient(cc, true, b, r);
      else if (*s_susp) run_quotient(sc, false, b, r);
      else if (*s_contract) run_contract(kc, b, r);
      else if (*s_null) run_nullhomotopy(nc, b, r);
      else if (*s_hom) run_homology(hc, b, r);
      else if (*s_cubes) run_cubes(ubc, b, r);
      else if (*s_psi) run_psi(pc, b, r);
      else if (*s_gamma) run_generator(gam, GenKind::Gamma, r);
      else if (*s_fmap) run_generator(fm, GenKind::F, r);
      else if (*s_gmap) run_generator(gm, GenKind::G, r);
      else if (*s_verify) run_verify(vc, r);
      else if (*s_ident) run_identities(ic, r);
      else if (*s_a1) run_a1(ac, r);
    } catch (const Error& e) {
      r.status = status_for(e.code());
      r.error = e.what();
    } catch (const std::exception& e) {
      r.status = ExitStatus::Usage;
      r.error = e.what();
    }
  };

  const auto t0 = std::chrono::steady_clock::now();
  auto done = std::async(std::launch::async, body);
  if (done.wait_for(std::chrono::duration<double>(b.time_limit_s)) == std::future_status::timeout) {
    Report t;
    t.command = r.command;
    t.status = ExitStatus::Budget;
    t.error = "time limit of " + std::to_string(b.time_limit_s) + " s exceeded";
    t.budget["time_limit_s"] = b.time_limit_s;
    std::cout << emit_report(t, fmt) << std::flush;
    std::_Exit(static_cast<int>(ExitStatus::Budget));
  }
  done.get();
  if (opt.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << emit_report(r, fmt);
  return r.exit_code();
}
