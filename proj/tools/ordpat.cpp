// ordpat: command-line front end. Exit status 0 = success / verified,
// 1 = a checked property failed, 2 = usage or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ordpat/ordpat.hpp"

namespace {

using namespace ordpat;

constexpr int kOk = 0, kViolation = 1, kUsage = 2;

std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path.empty() || path == "-") return std::make_unique<std::istream>(std::cin.rdbuf());
  auto f = std::make_unique<std::ifstream>(path);
  if (!*f) throw invalid_input("cannot open " + path);
  return f;
}

OrderedGraph read_graph(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_edge_list(*in);
  } catch (const invalid_input& e) {
    throw invalid_input((path.empty() || path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

std::string join(const std::vector<Vertex>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// ---- gen-fixture ----

struct FixtureOpts {
  std::string kind;
  Vertex n = 10, t = 2, r = 1;
  std::string shape = "nested";
  double density = 0.1;
  std::uint64_t seed = 1;
};

int gen_fixture(const FixtureOpts& o) {
  if (o.kind == "halfgraph") {
    write_edge_list(std::cout, gen_halfgraph(o.n));
  } else if (o.kind == "path") {
    write_edge_list(std::cout, gen_path(o.n));
  } else if (o.kind == "random") {
    std::mt19937_64 rng(o.seed);
    std::bernoulli_distribution coin(o.density);
    std::vector<Edge> es;
    for (Vertex i = 1; i <= o.n; ++i)
      for (Vertex j = i + 2; j <= o.n; ++j)
        if (coin(rng)) es.push_back({i, j});
    write_edge_list(std::cout, TracedGraph::from_pattern_edges(o.n, std::move(es)));
  } else if (o.kind == "constellation") {
    const auto shape = o.shape == "sequential" ? ConstellationShape::Sequential : ConstellationShape::Nested;
    if (o.shape != "sequential" && o.shape != "nested") throw invalid_input("--shape must be nested or sequential");
    write_edge_list(std::cout, build_tr_constellation(o.t, o.r, shape));
  } else if (o.kind == "topminor") {
    write_edge_list(std::cout, build_topminor_pattern(o.t));
  } else if (o.kind == "crossing") {
    write_edge_list(std::cout, OrderedGraph(4, {{1, 3}, {2, 4}}));
  } else {
    throw invalid_input("unknown fixture " + o.kind);
  }
  return kOk;
}

// ---- gen-lowerbound / verify-lowerbound ----

int gen_lowerbound(int ell, bool raw, const std::string& out_path) {
  const auto c = build_construction(ell);
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw invalid_input("cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (raw) {
    write_edge_list(out, c.graph);
  } else {
    write_edge_list(out, to_traced(c, ham_path(c)));
  }
  return kOk;
}

int verify_lowerbound(int ell, bool with_lip) {
  bool all = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    all = all && ok;
    std::cout << name << ": " << (ok ? "pass" : "FAIL") << (detail.empty() ? "" : " (" + detail + ")") << "\n";
  };
  const auto sys = build_intervals(ell);
  report("intervals", check_nesting_properties(sys), std::to_string(sys.intervals.size()) + " intervals");
  const auto c = build_construction(ell);
  std::cout << "vertices: " << c.graph.order() << "\nedges: " << c.graph.size() << "\nribs: " << c.rib_count << "\n";
  const long double lower = std::pow(2.0L, std::pow(2.0L, ell));
  report("size >= 2^(2^l)", static_cast<long double>(c.graph.order()) >= lower, "");
  report("edge order", check_edge_order(c), "");
  const auto deg = degeneracy_order(c.graph);
  report("2-degenerate", deg.degeneracy <= 2 && verify_elimination_order(c.graph, deg.order, 2),
         "degeneracy " + std::to_string(deg.degeneracy));
  std::vector<Vertex> path;
  detail::ham_path_rec(c, 1, path);
  const auto hp = validate_ham_path(c, path);
  report("hamiltonian path", hp.ok(), "ribs used " + std::to_string(hp.ribs_used));
  if (!hp.ok()) return kViolation;
  const auto traced = to_traced(c, path);
  try {
    const auto w = pattern_is_constellation(c, path, traced);
    report("pattern graph is a constellation", true, std::to_string(w.forest.stars.size()) + " stars");
  } catch (const construction_error& e) {
    report("pattern graph is a constellation", false, e.what());
  }
  if (with_lip) {
    if (ell > 2) throw invalid_input("--lip is supported for l <= 2");
    const auto pos = path_positions(path);
    const auto et = eliminate_in_order(traced.graph(), construction_elimination_order(c, pos));
    const auto lip = longest_induced_path_treedec(traced.graph(), et);
    report("longest induced path witness", is_induced_path(traced.graph(), lip.witness),
           "L = " + std::to_string(lip.length) + ", width " + std::to_string(lip.width));
  }
  return all ? kOk : kViolation;
}

// ---- recognize / find-pattern ----

int recognize(const std::string& file) {
  const auto h = read_graph(file);
  const auto w = is_constellation(h);
  if (!w) {
    std::cout << "constellation: no\n";
    return kViolation;
  }
  std::cout << "constellation: yes\n" << witness_to_json(*w).dump() << "\n";
  return kOk;
}

int find_pattern(const std::string& gfile, const std::string& pfile, Vertex gap, bool plain) {
  const auto g = read_graph(gfile);
  const auto h = read_graph(pfile);
  const OrderedGraph host = plain ? g : TracedGraph(g).pattern_graph();
  const auto e = contains_pattern(host, h, gap);
  if (!e) {
    std::cout << "not found\n";
    return kViolation;
  }
  std::cout << "found: positions " << join(e->positions) << " gap " << e->gap(host.order()) << "\n";
  return kOk;
}

// ---- peel ----

int run_peel(const std::string& gfile, const std::string& pfile, int r, bool toy, long p) {
  const TracedGraph g(read_graph(gfile));
  const auto h = read_graph(pfile);
  const auto cfg = toy ? PeelConfig::toy_mode(r) : PeelConfig::compliant(r);
  PeelStats st;
  const auto o = peel(g, h, cfg, p, &st);
  nlohmann::json j;
  j["kind"] = kind_name(o.kind);
  if (o.kind == OutcomeKind::P3) {
    j["positions"] = o.embedding.positions;
    j["gap"] = o.gap;
  } else {
    j["vertices"] = o.path;
    if (o.kind == OutcomeKind::P1) j["anchor"] = o.anchor == Anchor::Start ? "start" : "end";
  }
  j["mode"] = toy ? "toy" : "compliant";
  j["calls"] = st.calls;
  j["valid"] = validate_outcome(g, h, o, 1);
  std::cout << j.dump() << "\n";
  return j["valid"].get<bool>() ? kOk : kViolation;
}

// ---- check-bounds ----

int check_bounds(const std::vector<int>& rs, int t_max, const std::string& grid, long precision) {
  if (grid != "default") throw invalid_input("only --grid default is supported");
  if (t_max < 1) throw invalid_input("--t-max must be >= 1");
  std::unique_ptr<PrecisionGuard> guard;
  if (precision > 0) guard = std::make_unique<PrecisionGuard>(static_cast<mpfr_prec_t>(precision));
  const auto params = default_params();
  bool all = params.compliant;
  std::cout << "# parameter functions compliant for t <= 100: " << (params.compliant ? "yes" : "no") << "\n";
  std::cout << "r\tt\tp_label\tp\tell_factor\tell\tinequality\tmargin\tunits\tverdict\n";
  for (const auto& gp : default_grid(rs, t_max)) {
    const auto row = evaluate_grid_point(params, gp);
    if (!row) continue;
    for (const auto& x : row->results) {
      all = all && x.pass;
      std::cout << gp.r << '\t' << gp.t << '\t' << gp.p_label << '\t' << row->p.mid_str() << '\t' << gp.ell_factor
                << '\t' << row->ell.mid_str() << '\t' << x.name << '\t' << x.margin.mid_str() << '\t' << x.units
                << '\t' << (x.pass ? "pass" : "FAIL") << '\n';
    }
  }
  return all ? kOk : kViolation;
}

// ---- oracle-lip ----

int oracle_lip(const std::string& file, Vertex cap, const std::string& method, bool witness) {
  const auto g = read_graph(file);
  std::string m = method;
  if (m == "auto") m = min_degree_elimination(g).width <= 20 ? "td" : "dfs";
  std::vector<Vertex> w;
  if (m == "td") {
    const auto res = longest_induced_path_treedec(g);
    std::cout << std::min(res.length, cap) << "\n";
    w = res.witness;
  } else if (m == "dfs") {
    const auto res = longest_induced_path_oracle(g, cap);
    std::cout << res.length << "\n";
    if (res.reached_cap) std::cerr << "note: search stopped at the cap\n";
    w = res.witness;
  } else {
    throw invalid_input("--method must be auto, dfs or td");
  }
  if (witness) std::cout << join(w) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered patterns, constellations and long induced paths"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for randomized generators");

  FixtureOpts fx;
  auto* c_fix = app.add_subcommand("gen-fixture", "write a fixture graph as an edge list");
  c_fix->add_option("kind", fx.kind, "halfgraph | path | random | constellation | topminor | crossing")->required();
  c_fix->add_option("--n", fx.n, "number of vertices")->check(CLI::Range(1, 1 << 24));
  c_fix->add_option("--t", fx.t, "number of stars")->check(CLI::Range(1, 64));
  c_fix->add_option("--r", fx.r, "star arity")->check(CLI::Range(1, 64));
  c_fix->add_option("--shape", fx.shape, "nested | sequential");
  c_fix->add_option("--density", fx.density, "edge probability for random")->check(CLI::Range(0.0, 1.0));

  int ell = 1;
  bool raw = false, lip = false;
  auto* c_gen = app.add_subcommand("gen-lowerbound", "write G_l relabelled along its Hamiltonian path");
  c_gen->add_option("--ell", ell, "level l in [1,3]")->check(CLI::Range(1, kMaxConstructionEll));
  std::string out_path;
  bool traced = false;
  c_gen->add_option("--out", out_path, "output file (default stdout)");
  c_gen->add_flag("--traced", traced, "relabel along the Hamiltonian path (the default)");
  c_gen->add_flag("--raw", raw, "keep the node/role labelling instead")->excludes("--traced");
  auto* c_ver = app.add_subcommand("verify-lowerbound", "run the structural checks on G_l");
  c_ver->add_option("--ell", ell, "level l in [1,3]")->check(CLI::Range(1, kMaxConstructionEll));
  c_ver->add_flag("--lip", lip, "also compute the exact longest induced path (l <= 2)");

  std::string pattern, graph;
  auto* c_rec = app.add_subcommand("recognize", "decide whether a pattern is a constellation");
  c_rec->add_option("--pattern", pattern, "edge-list file, '-' for stdin")->required();

  Vertex gap = 1;
  bool plain = false;
  auto* c_find = app.add_subcommand("find-pattern", "search for an ordered pattern");
  c_find->add_option("--graph", graph, "host edge list (traced unless --plain)")->required();
  c_find->add_option("--pattern", pattern, "pattern edge list")->required();
  c_find->add_option("--gap", gap, "minimum gap")->check(CLI::PositiveNumber);
  c_find->add_flag("--plain", plain, "search the host graph itself rather than G - E(P)");

  int r = 1;
  bool toy = false;
  long p = 0;
  auto* c_peel = app.add_subcommand("peel", "run the peel recursion and print a certificate");
  c_peel->add_option("--graph", graph, "traced host graph")->required();
  c_peel->add_option("--pattern", pattern, "constellation of r-stars")->required();
  c_peel->add_option("--r", r, "star arity")->check(CLI::Range(1, 64));
  c_peel->add_flag("--toy", toy, "use the toy thresholds instead of f, g, h");
  c_peel->add_option("--p", p, "initial counter p")->check(CLI::NonNegativeNumber);

  std::vector<int> rs{1, 2, 3, 5};
  int t_max = 20;
  std::string grid = "default";
  long precision = 0;
  auto* c_bounds = app.add_subcommand("check-bounds", "verify the bound inequalities on a grid (TSV)");
  c_bounds->add_option("--r", rs, "star arities")->check(CLI::Range(1, 1000));
  c_bounds->add_option("--t-max", t_max, "largest t")->check(CLI::Range(1, 100));
  c_bounds->add_option("--grid", grid, "grid name");
  c_bounds->add_option("--precision", precision, "working precision in bits")->check(CLI::Range(64L, 1L << 20));

  Vertex cap = 1 << 30;
  std::string method = "auto";
  bool witness = false;
  auto* c_lip = app.add_subcommand("oracle-lip", "exact longest induced path");
  c_lip->add_option("--graph", graph, "edge list, default stdin");
  c_lip->add_option("--cap", cap, "stop the search at this many vertices")->check(CLI::PositiveNumber);
  c_lip->add_option("--method", method, "auto | dfs | td");
  c_lip->add_flag("--witness", witness, "print the path too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  fx.seed = seed;
  try {
    if (*c_fix) return gen_fixture(fx);
    if (*c_gen) return gen_lowerbound(ell, raw, out_path);
    if (*c_ver) return verify_lowerbound(ell, lip);
    if (*c_rec) return recognize(pattern);
    if (*c_find) return find_pattern(graph, pattern, gap, plain);
    if (*c_peel) return run_peel(graph, pattern, r, toy, p);
    if (*c_bounds) return check_bounds(rs, t_max, grid, precision);
    if (*c_lip) return oracle_lip(graph, cap, method, witness);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const construction_error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
