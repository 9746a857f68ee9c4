#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "topocrystal/embed.hpp"

#include <json.hpp>

namespace topocrystal {

enum class ExportFormat { json, csv, obj };

inline ExportFormat parse_format(const std::string& s) {
  if (s == "json") return ExportFormat::json;
  if (s == "csv") return ExportFormat::csv;
  if (s == "obj") return ExportFormat::obj;
  throw std::invalid_argument("unknown export format '" + s + "'");
}

namespace detail {

// 9 significant digits, deterministic across runs.
inline std::string fmt9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace detail

inline std::string export_json(const EmbeddedFragment& ef) {
  const CrystalFragment& frag = *ef.fragment;
  const Graph& g = *frag.graph;
  const CycleBasis& basis = *frag.basis;
  nlohmann::ordered_json root;
  root["graph"]["vertices"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, w] : g.edge_pairs()) edges.push_back({u, w});
  root["graph"]["edges"] = std::move(edges);
  root["cycle_rank"] = basis.m();
  root["radius"] = frag.radius;
  auto gram = nlohmann::ordered_json::array();
  for (const auto& row : basis.gram()) gram.push_back(row);
  root["gram"] = std::move(gram);
  auto atoms = nlohmann::ordered_json::array();
  for (int id = 0; id < static_cast<int>(frag.atoms.size()); ++id) {
    nlohmann::ordered_json a;
    a["id"] = id;
    a["vertex"] = frag.atoms[id].vertex;
    a["depth"] = frag.depth[id];
    a["chain"] = dense(frag.atoms[id].chain, g.pair_count());
    auto coords = nlohmann::ordered_json::array();
    for (const auto& r : ef.positions[id].y) coords.push_back(rat_str(r));
    a["coords"] = std::move(coords);
    a["coords_float"] = ef.float_positions[id];
    atoms.push_back(std::move(a));
  }
  root["atoms"] = std::move(atoms);
  auto bonds = nlohmann::ordered_json::array();
  for (const auto& b : frag.bonds) {
    nlohmann::ordered_json j;
    j["from"] = b.from;
    j["to"] = b.to;
    j["edge"] = b.pair;
    bonds.push_back(std::move(j));
  }
  root["bonds"] = std::move(bonds);
  return root.dump(2) + "\n";
}

// One atom per row: id, vertex, depth, the m exact coordinates as "p/q",
// then the m float coordinates.  Bonds go in a companion file.
inline std::string export_csv_atoms(const EmbeddedFragment& ef) {
  const CrystalFragment& frag = *ef.fragment;
  const int m = frag.basis->m();
  std::ostringstream os;
  os << "id,vertex,depth";
  for (int j = 0; j < m; ++j) os << ",c" << j;
  for (int j = 0; j < m; ++j) os << ",f" << j;
  os << "\n";
  for (int id = 0; id < static_cast<int>(frag.atoms.size()); ++id) {
    os << id << "," << frag.atoms[id].vertex << "," << frag.depth[id];
    for (int j = 0; j < m; ++j) os << "," << rat_str(ef.positions[id].y[j]);
    for (int j = 0; j < m; ++j) os << "," << detail::fmt9(ef.float_positions[id][j]);
    os << "\n";
  }
  return os.str();
}

inline std::string export_csv_bonds(const EmbeddedFragment& ef) {
  std::ostringstream os;
  os << "from,to,edge\n";
  for (const auto& b : ef.fragment->bonds) os << b.from << "," << b.to << "," << b.pair << "\n";
  return os.str();
}

// Wavefront OBJ: atoms as vertices projected onto the first dims orthonormal
// axes (padded to three coordinates), bonds as line elements (1-based).
inline std::string export_obj(const EmbeddedFragment& ef, int dims, const std::string& label) {
  const CrystalFragment& frag = *ef.fragment;
  const int m = frag.basis->m();
  if (dims <= 0) dims = m < 3 ? m : 3;
  if (dims > 3) throw std::invalid_argument("export_obj: at most 3 projection axes");
  if (dims > m) dims = m;
  std::ostringstream os;
  os << "# " << label << " radius " << frag.radius << " cycle_rank " << m
     << " projected_dims " << dims << "\n";
  for (const auto& fp : ef.float_positions) {
    double xyz[3] = {0, 0, 0};
    for (int j = 0; j < dims; ++j) xyz[j] = fp[j];
    os << "v " << detail::fmt9(xyz[0]) << " " << detail::fmt9(xyz[1]) << " "
       << detail::fmt9(xyz[2]) << "\n";
  }
  for (const auto& b : frag.bonds) os << "l " << b.from + 1 << " " << b.to + 1 << "\n";
  return os.str();
}

// Single-buffer export.  CSV concatenates the atoms table, a blank line, and
// the bonds table; callers that want separate files use the _atoms/_bonds
// functions directly.
inline std::string export_fragment(const EmbeddedFragment& ef, ExportFormat format,
                                   int project_dims = 0, const std::string& label = "graph") {
  switch (format) {
    case ExportFormat::json:
      return export_json(ef);
    case ExportFormat::csv:
      return export_csv_atoms(ef) + "\n" + export_csv_bonds(ef);
    case ExportFormat::obj:
      return export_obj(ef, project_dims, label);
  }
  throw std::logic_error("export_fragment: bad format");
}

}  // namespace topocrystal
