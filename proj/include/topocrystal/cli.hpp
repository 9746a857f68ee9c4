#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topocrystal/builtins.hpp"
#include "topocrystal/cover.hpp"
#include "topocrystal/cycle_space.hpp"
#include "topocrystal/embed.hpp"
#include "topocrystal/exporters.hpp"
#include "topocrystal/graph.hpp"
#include "topocrystal/packing.hpp"
#include "topocrystal/symmetry.hpp"
#include "topocrystal/verify.hpp"

// Exit codes: 0 success, 1 verification found a counterexample (with a
// machine-readable dump on stdout), 2 usage or input errors.

namespace topocrystal {

namespace cli_detail {

struct GraphSource {
  std::string file;
  std::string builtin;

  // a display label for exports: builtin spec, or the file's basename
  std::string label() const {
    if (!builtin.empty()) return builtin;
    const auto slash = file.find_last_of('/');
    return slash == std::string::npos ? file : file.substr(slash + 1);
  }

  Graph load() const {
    if (builtin.empty() == file.empty())
      throw std::invalid_argument("exactly one graph source required: a file or --builtin");
    if (!builtin.empty()) return builtin_graph(builtin);
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open graph file '" + file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_graph(text.str());
  }
};

inline void add_source(CLI::App* cmd, GraphSource& src) {
  cmd->add_option("graph", src.file, "graph file (see README for the format)");
  cmd->add_option("--builtin", src.builtin, "bundled graph, name or name:n");
}

inline std::string json_line(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline std::vector<std::string> rat_strings(const RVec& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Rat& r : v) out.push_back(rat_str(r));
  return out;
}

inline std::string rat_row(const RVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    os << rat_str(v[i]);
  }
  return os.str();
}

inline int run_info(const GraphSource& src, bool json, std::ostream& out) {
  const Graph g = src.load();
  const EulerData ed = euler_data(g);
  const std::vector<int> bridges = find_bridges(g);
  const int diam = diameter(g);
  if (json) {
    nlohmann::ordered_json j;
    j["vertices"] = ed.vertices;
    j["edge_pairs"] = ed.edge_pairs;
    j["cycle_rank"] = ed.cycle_rank;
    j["diameter"] = diam;
    j["bridges"] = bridges;
    out << json_line(j);
    return 0;
  }
  out << "vertices: " << ed.vertices << "\n";
  out << "edge pairs: " << ed.edge_pairs << "\n";
  out << "cycle rank: " << ed.cycle_rank << "\n";
  out << "diameter: " << diam << "\n";
  out << "bridges:";
  if (bridges.empty()) out << " none";
  for (int b : bridges) out << " e" << b;
  out << "\n";
  return 0;
}

inline int run_trees(const GraphSource& src, bool json, std::ostream& out, std::ostream& err) {
  const Graph g = src.load();
  const Int by_laplacian = spanning_tree_count(g);
  const CycleBasis basis(g);
  const Int by_gram = gram_determinant(basis);
  if (json) {
    nlohmann::ordered_json j;
    j["matrix_tree"] = by_laplacian.str();
    j["cycle_gram"] = by_gram.str();
    j["agree"] = by_laplacian == by_gram;
    out << json_line(j);
  } else {
    out << "spanning trees (matrix-tree): " << by_laplacian.str() << "\n";
    out << "spanning trees (cycle gram): " << by_gram.str() << "\n";
  }
  if (by_laplacian != by_gram) {
    err << "error: the two spanning-tree counts disagree\n";
    return 1;
  }
  return 0;
}

inline int run_packing(const GraphSource& src, bool json, std::ostream& out) {
  const Graph g = src.load();
  const PackingReport rep = packing_report(g);
  if (json) {
    nlohmann::ordered_json j;
    j["vertices"] = rep.vertex_count;
    j["edge_pairs"] = rep.pair_count;
    j["cycle_rank"] = rep.cycle_rank;
    j["diameter"] = rep.diameter;
    j["tree_count"] = rep.tree_count.str();
    j["gram_det"] = rep.gram_det.str();
    std::vector<std::string> factors;
    for (const Int& d : rep.invariant_factors) factors.push_back(d.str());
    j["invariant_factors"] = factors;
    j["quotient_order"] = rep.quotient_order.str();
    j["bridges"] = rep.bridges;
    j["residue_count"] = rep.residue_count;
    if (rep.packing_fraction)
      j["packing_fraction"] = rat_str(*rep.packing_fraction);
    else
      j["packing_fraction"] = nullptr;
    out << json_line(j);
    return 0;
  }
  out << "vertices: " << rep.vertex_count << "\n";
  out << "edge pairs: " << rep.pair_count << "\n";
  out << "cycle rank: " << rep.cycle_rank << "\n";
  out << "diameter: " << rep.diameter << "\n";
  out << "spanning trees: " << rep.tree_count.str() << "\n";
  out << "gram determinant: " << rep.gram_det.str() << "\n";
  out << "invariant factors:";
  for (const Int& d : rep.invariant_factors) out << " " << d.str();
  out << "\n";
  out << "lattice quotient order: " << rep.quotient_order.str() << "\n";
  out << "bridges:";
  if (rep.bridges.empty()) out << " none";
  for (int b : rep.bridges) out << " e" << b;
  out << "\n";
  out << "atom residues (radius " << rep.diameter << "): " << rep.residue_count << "\n";
  if (rep.packing_fraction)
    out << "packing fraction: " << rat_str(*rep.packing_fraction) << "\n";
  else
    out << "packing fraction: undefined (bridges present)\n";
  return 0;
}

inline int run_crystal(const GraphSource& src, int radius, const std::string& format_name,
                       int dims, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  const Graph g = src.load();
  const ExportFormat format = parse_format(format_name);
  const CycleBasis basis(g);
  const CrystalFragment frag = ball(g, basis, radius);
  const EmbeddedFragment ef = embed_fragment(frag);
  if (out_path.empty()) {
    out << export_fragment(ef, format, dims, src.label());
    return 0;
  }
  if (format == ExportFormat::csv) {
    // atoms land in the named file, bonds in a companion next to it
    std::string bonds_path = out_path;
    const auto dot = bonds_path.find_last_of('.');
    const std::string suffix = "_bonds";
    if (dot == std::string::npos || bonds_path.find('/', dot) != std::string::npos)
      bonds_path += suffix;
    else
      bonds_path.insert(dot, suffix);
    std::ofstream fa(out_path), fb(bonds_path);
    if (!fa || !fb) {
      err << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    fa << export_csv_atoms(ef);
    fb << export_csv_bonds(ef);
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    err << "error: cannot write '" << out_path << "'\n";
    return 2;
  }
  f << export_fragment(ef, format, dims, src.label());
  return 0;
}

inline int run_aut(const GraphSource& src, bool json, std::ostream& out) {
  const Graph g = src.load();
  const CycleBasis basis(g);
  const std::vector<Automorphism> group = automorphisms(g);
  const std::vector<Automorphism> gens = generating_set(group);
  const bool arc = arc_transitive(g, group);
  int stabilizer = 0;
  for (const Automorphism& f : group)
    if (f.apply(basepoint) == basepoint) ++stabilizer;

  std::vector<CoveringSymmetry> lifts;
  std::vector<AffineMap> maps;
  for (const Automorphism& f : gens) {
    lifts.push_back(canonical_lift(g, basis, f));
    maps.push_back(affine_action(basis, lifts.back()));
  }
  const std::optional<RVec> fixed = shared_fixed_point(maps);

  if (json) {
    nlohmann::ordered_json j;
    j["order"] = group.size();
    j["arc_transitive"] = arc;
    j["basepoint_stabilizer"] = stabilizer;
    j["generators"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      nlohmann::ordered_json gj;
      gj["vertices"] = gens[i].vertex_perm;
      std::vector<std::vector<int>> edges;
      for (const DirectedEdge& e : gens[i].edge_map) edges.push_back({e.pair, e.sign});
      gj["edges"] = edges;
      gj["lift_chain"] = dense(lifts[i].beta, g.pair_count());
      gj["linear"] = maps[i].linear;
      gj["translation"] = rat_strings(maps[i].translation.y);
      j["generators"].push_back(std::move(gj));
    }
    if (fixed)
      j["lift_fixed_point"] = rat_strings(*fixed);
    else
      j["lift_fixed_point"] = nullptr;
    out << json_line(j);
    return 0;
  }

  out << "automorphisms: " << group.size() << "\n";
  out << "arc transitive: " << (arc ? "yes" : "no") << "\n";
  out << "basepoint stabilizer: " << stabilizer << "\n";
  out << "generators: " << gens.size() << "\n";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    out << "generator " << i << ":\n";
    out << "  vertices:";
    for (int v : gens[i].vertex_perm) out << " " << v;
    out << "\n  edges:";
    for (const DirectedEdge& e : gens[i].edge_map) {
      out << " e" << e.pair;
      if (e.sign < 0) out << "^-1";
    }
    out << "\n  lift chain:";
    if (lifts[i].beta.zero()) out << " zero";
    for (const auto& [p, k] : lifts[i].beta.terms()) out << " " << k << "*e" << p;
    out << "\n  linear:\n";
    for (const LVec& row : maps[i].linear) {
      out << "   ";
      for (long long x : row) out << " " << x;
      out << "\n";
    }
    out << "  translation: " << rat_row(maps[i].translation.y) << "\n";
  }
  if (fixed)
    out << "lift fixed point: " << rat_row(*fixed) << "\n";
  else
    out << "lift fixed point: none\n";
  return 0;
}

inline int run_verify(const GraphSource& src, int radius, bool json, std::ostream& out) {
  const Graph g = src.load();
  const VerifyReport rep = verify_suite(g, radius);
  if (json) {
    nlohmann::ordered_json j;
    j["radius"] = rep.radius;
    j["bridgeless"] = rep.bridgeless;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : rep.checks) {
      nlohmann::ordered_json cj;
      cj["name"] = c.name;
      cj["passed"] = c.passed;
      cj["detail"] = c.detail;
      j["checks"].push_back(std::move(cj));
    }
    j["counterexample"] = rep.counterexample;
    out << json_line(j);
    return rep.all_passed() ? 0 : 1;
  }
  int passed = 0;
  for (const CheckResult& c : rep.checks) {
    if (c.passed) {
      ++passed;
      out << "ok " << c.name;
      if (!c.detail.empty()) out << " (" << c.detail << ")";
      out << "\n";
    } else {
      out << "FAIL " << c.name << ": " << c.detail << "\n";
    }
  }
  out << rep.checks.size() << " checks, " << passed << " passed\n";
  if (!rep.all_passed()) {
    out << rep.counterexample.dump(2) << "\n";
    return 1;
  }
  return 0;
}

inline int run_builtin_list(bool json, std::ostream& out) {
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const BuiltinInfo& info : builtin_list()) {
      nlohmann::ordered_json bj;
      bj["name"] = info.name;
      if (info.parametrized) {
        bj["parametrized"] = true;
      } else {
        const Graph g = builtin_graph(info.name);
        const EulerData ed = euler_data(g);
        bj["vertices"] = ed.vertices;
        bj["edge_pairs"] = ed.edge_pairs;
        bj["cycle_rank"] = ed.cycle_rank;
      }
      j.push_back(std::move(bj));
    }
    out << json_line(j);
    return 0;
  }
  for (const BuiltinInfo& info : builtin_list()) {
    if (info.parametrized) {
      out << info.name << ":n 2 n n-1\n";
      continue;
    }
    const Graph g = builtin_graph(info.name);
    const EulerData ed = euler_data(g);
    out << info.name << " " << ed.vertices << " " << ed.edge_pairs << " " << ed.cycle_rank << "\n";
  }
  return 0;
}

}  // namespace cli_detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using cli_detail::GraphSource;

  CLI::App app{"topological crystals of finite graphs", "topocrystal"};
  app.require_subcommand(1);

  GraphSource src;
  bool json = false;
  int radius = 0;
  int verify_radius = 2;
  std::string format_name = "json";
  int dims = 0;
  std::string out_path;

  CLI::App* info = app.add_subcommand("info", "vertex, edge and cycle counts");
  cli_detail::add_source(info, src);
  info->add_flag("--json", json, "JSON output");

  CLI::App* trees = app.add_subcommand("trees", "spanning tree count, two ways");
  cli_detail::add_source(trees, src);
  trees->add_flag("--json", json, "JSON output");

  CLI::App* packing = app.add_subcommand("packing", "lattice quotient and packing fraction");
  cli_detail::add_source(packing, src);
  packing->add_flag("--json", json, "JSON output");

  CLI::App* crystal = app.add_subcommand("crystal", "emit a finite window of the crystal");
  cli_detail::add_source(crystal, src);
  crystal->add_option("--radius", radius, "ball radius in bond steps")
      ->required()
      ->check(CLI::NonNegativeNumber);
  crystal->add_option("--format", format_name, "json, csv or obj");
  crystal->add_option("--dims", dims, "projection dimensions for obj (2 or 3)");
  crystal->add_option("--out", out_path, "output file (csv adds a _bonds companion)");

  CLI::App* aut = app.add_subcommand("aut", "automorphisms and their affine actions");
  cli_detail::add_source(aut, src);
  aut->add_flag("--json", json, "JSON output");

  CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
  cli_detail::add_source(verify, src);
  verify->add_option("--radius", verify_radius, "ball radius for cover checks")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--json", json, "JSON output");

  CLI::App* blist = app.add_subcommand("builtin-list", "list bundled graphs");
  blist->add_flag("--json", json, "JSON output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // help request
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (info->parsed()) return cli_detail::run_info(src, json, out);
    if (trees->parsed()) return cli_detail::run_trees(src, json, out, err);
    if (packing->parsed()) return cli_detail::run_packing(src, json, out);
    if (crystal->parsed())
      return cli_detail::run_crystal(src, radius, format_name, dims, out_path, out, err);
    if (aut->parsed()) return cli_detail::run_aut(src, json, out);
    if (verify->parsed()) return cli_detail::run_verify(src, verify_radius, json, out);
    if (blist->parsed()) return cli_detail::run_builtin_list(json, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace topocrystal
