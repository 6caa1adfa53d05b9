#pragma once

// File formats: plain edge lists, and JSON documents for graphs (with an
// optional basepoint and tower label table), certificates and grid maps.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dht/constructions.hpp"
#include "dht/error.hpp"
#include "dht/graph.hpp"
#include "dht/homotopy.hpp"
#include "dht/tsfree.hpp"

namespace dht {

using Json = nlohmann::ordered_json;

/// FNV-1a over the canonical vertex and edge lists, as 16 hex digits.
inline std::string graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& l : g.labels()) feed(l);
  feed("--");
  for (auto [u, v] : g.edges()) {
    feed(g.label(u));
    feed(g.label(v));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(Errc::FileNotFound, path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FileNotFound, "cannot write " + path);
  out << text;
}

// ---- edge lists ----------------------------------------------------------

/// `u v` per line, `#` starts a comment. A line with a single label declares
/// a vertex (needed for the one-vertex graph).
inline Graph parse_edge_list(const std::string& text) {
  std::vector<std::string> vertices;
  std::map<std::string, bool> known;
  std::vector<std::pair<std::string, std::string>> edges;
  std::map<std::pair<std::string, std::string>, int> first_line;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto err = [&](const std::string& what) { return Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + what); };
  auto note = [&](const std::string& v) {
    if (!known[v]) vertices.push_back(v);
    known[v] = true;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() > 2) throw err("expected 'u v', got " + std::to_string(tok.size()) + " fields");
    for (const auto& t : tok)
      if (!valid_label(t)) throw err("bad vertex label '" + t + "'");
    if (tok.size() == 1) {
      note(tok[0]);
      continue;
    }
    if (tok[0] == tok[1]) throw err("self-loop at '" + tok[0] + "'");
    auto key = std::minmax(tok[0], tok[1]);
    if (auto [it, fresh] = first_line.emplace(key, lineno); !fresh)
      throw err("duplicate edge " + tok[0] + " " + tok[1] + " (first on line " + std::to_string(it->second) + ")");
    note(tok[0]);
    note(tok[1]);
    edges.emplace_back(tok[0], tok[1]);
  }
  if (vertices.empty()) throw Error(Errc::ParseError, "no vertices");
  try {
    return Graph::from_edges(std::move(vertices), edges);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline std::string format_edge_list(const Graph& g) {
  std::string s;
  if (g.edge_count() == 0) return g.label(0) + "\n";
  for (auto [u, v] : g.edges()) s += g.label(u) + " " + g.label(v) + "\n";
  return s;
}

// ---- structured graphs ---------------------------------------------------

struct GraphDocument {
  Graph graph;
  std::optional<VertexId> basepoint;
  std::vector<SuspensionLabel> labels;  // empty unless a tower level
};

inline Json graph_json(const Graph& g, std::optional<VertexId> basepoint = std::nullopt,
                       const std::vector<SuspensionLabel>& labels = {}) {
  Json j;
  j["format"] = "dht-graph";
  j["version"] = 1;
  j["hash"] = graph_hash(g);
  j["vertices"] = g.labels();
  Json es = Json::array();
  for (auto [u, v] : g.edges()) es.push_back({g.label(u), g.label(v)});
  j["edges"] = std::move(es);
  if (basepoint) j["basepoint"] = g.label(*basepoint);
  if (!labels.empty()) {
    Json t = Json::array();
    for (VertexId v = 0; v < g.size(); ++v) t.push_back({{"vertex", g.label(v)}, {"base", labels[v].base}, {"subs", labels[v].subs}});
    j["labels"] = std::move(t);
  }
  return j;
}

namespace detail {

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, what + ": " + e.what());
  }
}

inline void expect_format(const Json& j, const std::string& name) {
  if (!j.is_object() || j.value("format", "") != name) throw Error(Errc::ParseError, "not a " + name + " document");
}

}  // namespace detail

inline GraphDocument graph_from_json(const Json& j) {
  detail::expect_format(j, "dht-graph");
  GraphDocument d;
  try {
    std::vector<std::string> vs = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "edge record needs two labels");
      es.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    d.graph = Graph::from_edges(std::move(vs), es);
    if (j.contains("hash") && j["hash"].get<std::string>() != graph_hash(d.graph))
      throw Error(Errc::ParseError, "graph hash does not match its contents");
    if (j.contains("basepoint")) d.basepoint = d.graph.id(j["basepoint"].get<std::string>());
    if (j.contains("labels")) {
      d.labels.resize(d.graph.size());
      for (const auto& r : j["labels"])
        d.labels[d.graph.id(r.at("vertex").get<std::string>())] = {r.at("base").get<std::string>(),
                                                                    r.at("subs").get<std::vector<int>>()};
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, std::string("graph document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, e.what());
  }
  return d;
}

/// Either format, told apart by a leading '{'.
inline GraphDocument parse_graph_text(const std::string& text) {
  auto p = text.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && text[p] == '{') return graph_from_json(detail::parse_json(text, "graph document"));
  return {parse_edge_list(text), std::nullopt, {}};
}

inline GraphDocument load_graph(const std::string& path) { return parse_graph_text(read_file(path)); }

/// Two-space indented JSON, except that a top-level "stages" array is
/// written one stage per line.
inline std::string dump(const Json& j) {
  if (!j.is_object() || !j.contains("stages")) return j.dump(2) + "\n";
  std::string out = "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + Json(it.key()).dump() + ": ";
    if (it.key() == "stages" && it.value().is_array()) {
      out += "[";
      for (std::size_t i = 0; i < it.value().size(); ++i) out += (i ? ",\n    " : "\n    ") + it.value()[i].dump();
      out += it.value().empty() ? "]" : "\n  ]";
    } else {
      std::string v = it.value().dump(2);
      for (std::size_t p = 0; (p = v.find('\n', p)) != std::string::npos; p += 3) v.replace(p, 1, "\n  ");
      out += v;
    }
  }
  return out + "\n}\n";
}

/// Level k of a tower with its label table.
inline Json tower_json(const Tower& tw, int k) {
  return graph_json(tw.level(k), std::nullopt, tw.labels.at(static_cast<std::size_t>(k - 1)));
}

// ---- certificates and grid maps -----------------------------------------

inline Json grid_json(const GridSpec& g) {
  Json a = Json::array();
  for (const auto& i : g.intervals()) a.push_back({i.lo, i.hi});
  return a;
}

inline GridSpec grid_from_json(const Json& a) {
  std::vector<Interval> iv;
  for (const auto& p : a) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::ParseError, "grid axis needs [lo, hi]");
    iv.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  try {
    return GridSpec(std::move(iv));
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

/// Header (domain, target and its hash, basepoint, length) then one label
/// array per stage, in canonical domain order.
inline Json certificate_json(const HomotopyCertificate& h) {
  Json j;
  j["format"] = "dht-certificate";
  j["version"] = 1;
  if (h.grid_domain()) j["domain"] = {{"grid", grid_json(h.grid())}};
  else j["domain"] = {{"graph", graph_json(h.graph())}};
  j["target_hash"] = graph_hash(h.target);
  j["target"] = graph_json(h.target);
  j["basepoint"] = h.basepoint ? Json(h.target.label(*h.basepoint)) : Json(nullptr);
  j["length"] = h.length();
  Json st = Json::array();
  for (const auto& s : h.stages) {
    Json row = Json::array();
    for (VertexId v : s) row.push_back(h.target.label(v));
    st.push_back(std::move(row));
  }
  j["stages"] = std::move(st);
  return j;
}

inline HomotopyCertificate certificate_from_json(const Json& j) {
  detail::expect_format(j, "dht-certificate");
  HomotopyCertificate h;
  try {
    const Json& d = j.at("domain");
    if (d.contains("grid")) h.domain = grid_from_json(d["grid"]);
    else if (d.contains("graph")) h.domain = graph_from_json(d["graph"]).graph;
    else throw Error(Errc::ParseError, "domain must be a grid or a graph");
    h.target = graph_from_json(j.at("target")).graph;
    if (j.at("target_hash").get<std::string>() != graph_hash(h.target))
      throw Error(Errc::ParseError, "target hash does not match the target graph");
    if (!j.at("basepoint").is_null()) h.basepoint = h.target.id(j["basepoint"].get<std::string>());
    const std::size_t n = h.domain_size();
    for (const auto& row : j.at("stages")) {
      if (row.size() != n)
        throw Error(Errc::ParseError, "stage " + std::to_string(h.stages.size()) + " has " + std::to_string(row.size()) +
                                          " entries, domain has " + std::to_string(n));
      std::vector<VertexId> s;
      s.reserve(n);
      for (const auto& l : row) s.push_back(h.target.id(l.get<std::string>()));
      h.stages.push_back(std::move(s));
    }
    if (h.stages.empty()) throw Error(Errc::ParseError, "certificate has no stages");
    if (j.at("length").get<std::size_t>() != h.length())
      throw Error(Errc::ParseError, "declared length " + std::to_string(j["length"].get<std::size_t>()) + " but " +
                                        std::to_string(h.stages.size()) + " stages");
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, std::string("certificate: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, e.what());
  }
  return h;
}

inline HomotopyCertificate load_certificate(const std::string& path) {
  return certificate_from_json(detail::parse_json(read_file(path), path));
}

/// A grid map is stored as a one-stage certificate.
inline Json grid_map_json(const GridMap& f, std::optional<VertexId> basepoint = std::nullopt) {
  return certificate_json(HomotopyCertificate{f.domain, f.target, basepoint, {f.values}});
}

inline Json based_map_json(const BasedMap& f) { return grid_map_json(f, f.basepoint); }

struct GridMapDocument {
  GridMap map;
  std::optional<VertexId> basepoint;

  BasedMap based() const {
    if (!basepoint) throw Error(Errc::ParseError, "grid map file has no basepoint");
    return BasedMap::make(map.domain, map.target, *basepoint, map.values);
  }
};

inline GridMapDocument grid_map_from_json(const Json& j) {
  HomotopyCertificate h = certificate_from_json(j);
  if (!h.grid_domain()) throw Error(Errc::ParseError, "grid map needs a grid domain");
  if (h.stages.size() != 1) throw Error(Errc::ParseError, "grid map file must have exactly one stage");
  return {GridMap{h.grid(), h.target, h.stages[0]}, h.basepoint};
}

inline GridMapDocument load_grid_map(const std::string& path) {
  return grid_map_from_json(detail::parse_json(read_file(path), path));
}

/// Word-tree dump: each tree vertex with its word and its image in G.
inline Json word_tree_json(const Lift& l) {
  Json j;
  j["format"] = "dht-word-tree";
  j["version"] = 1;
  j["depth"] = l.tree.depth();
  Json rows = Json::array();
  for (VertexId v = 0; v < l.tree.graph.size(); ++v)
    rows.push_back({{"vertex", l.tree.graph.label(v)},
                    {"word", l.edges.str(l.tree.words[v])},
                    {"image", l.edges.graph().label(l.tree.pi[v])}});
  j["words"] = std::move(rows);
  return j;
}

}  // namespace dht
