#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prr/gnss.hpp"
#include "prr/graph.hpp"

namespace prr {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Raised for unreadable, malformed, or invalid input documents. Messages
/// carry the offending field or parse position.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InputKind { kGraph, kScenario };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// FNV-1a over the raw file bytes; identifies inputs in reports.
inline std::string content_digest(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(out);
}

inline json parse_json(const std::string& text, const std::string& origin) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    // reparse with exceptions for the position diagnostic
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& err) {
      throw InputError(origin + ": " + err.what());
    }
  }
  return doc;
}

inline InputKind detect_input_kind(const json& doc) {
  if (!doc.is_object()) throw InputError("input is not a JSON object");
  if (doc.contains("schema") || doc.contains("constellations")) {
    return InputKind::kScenario;
  }
  if (doc.contains("arcs")) return InputKind::kGraph;
  throw InputError("input has neither 'arcs' (graph) nor 'constellations' "
                   "(scenario)");
}

namespace detail {

inline std::vector<Edge> parse_edge_list(const json& doc, const char* key) {
  std::vector<Edge> edges;
  if (!doc.contains(key)) return edges;
  if (!doc[key].is_array()) throw InputError(std::string(key) + " must be an array");
  for (const auto& item : doc[key]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw InputError(std::string(key) + " entries must be integer pairs");
    }
    edges.emplace_back(item[0].get<VertexId>(), item[1].get<VertexId>());
  }
  return edges;
}

}  // namespace detail

/// Graph document: vertex count, pseudorange arcs (canonical row order), and
/// optional known-distance / synchronization edge lists.
struct LoadedGraph {
  GnssGraph graph;
  bool has_gnss_parts = false;
};

inline LoadedGraph graph_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw InputError("graph document needs an integer field 'n'");
  }
  const int n = doc["n"].get<int>();
  if (!doc.contains("arcs") || !doc["arcs"].is_array()) {
    throw InputError("graph document needs an array field 'arcs'");
  }
  std::vector<Arc> arcs;
  for (const auto& item : doc["arcs"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw InputError("'arcs' entries must be integer pairs [tail, head]");
    }
    arcs.emplace_back(item[0].get<VertexId>(), item[1].get<VertexId>());
  }
  LoadedGraph loaded;
  try {
    auto distance_edges = detail::parse_edge_list(doc, "edges_distance");
    auto sync_edges = detail::parse_edge_list(doc, "edges_sync");
    loaded.has_gnss_parts = !distance_edges.empty() || !sync_edges.empty();
    loaded.graph = GnssGraph(DirectedPseudorangeGraph(n, std::move(arcs)),
                             SimpleGraph(n, std::move(distance_edges)),
                             SimpleGraph(n, std::move(sync_edges)));
  } catch (const std::invalid_argument& err) {
    throw InputError(std::string("graph document: ") + err.what());
  }
  return loaded;
}

inline ordered_json graph_to_json(const GnssGraph& g) {
  ordered_json doc;
  doc["n"] = g.vertex_count();
  doc["arcs"] = ordered_json::array();
  for (const Arc& a : g.gamma.arcs()) doc["arcs"].push_back({a.tail, a.head});
  doc["edges_distance"] = ordered_json::array();
  for (const Edge& e : g.g_d.edges()) doc["edges_distance"].push_back({e.u, e.v});
  doc["edges_sync"] = ordered_json::array();
  for (const Edge& e : g.g_s.edges()) doc["edges_sync"].push_back({e.u, e.v});
  return doc;
}

inline Eigen::VectorXd parse_position(const json& value, int dimension,
                                      const std::string& what) {
  if (!value.is_array() || static_cast<int>(value.size()) != dimension) {
    throw InputError(what + ": position must be an array of length " +
                     std::to_string(dimension));
  }
  Eigen::VectorXd pos(dimension);
  for (int i = 0; i < dimension; ++i) {
    if (!value[i].is_number()) throw InputError(what + ": position entries must be numbers");
    pos(i) = value[i].get<double>();
  }
  return pos;
}

inline Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("scenario must be a JSON object");
  if (!doc.contains("schema") || doc["schema"] != 1) {
    throw InputError("scenario: unsupported or missing 'schema' (expected 1)");
  }
  Scenario s;
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) {
    throw InputError("scenario: missing integer field 'dimension'");
  }
  s.dimension = doc["dimension"].get<int>();
  if (s.dimension < 2) throw InputError("scenario: dimension must be >= 2");

  if (!doc.contains("constellations") || !doc["constellations"].is_array()) {
    throw InputError("scenario: missing array field 'constellations'");
  }
  for (const auto& cdoc : doc["constellations"]) {
    Constellation c;
    if (!cdoc.contains("id") || !cdoc["id"].is_string()) {
      throw InputError("constellation: missing string field 'id'");
    }
    c.id = cdoc["id"].get<std::string>();
    c.bias = cdoc.value("bias", 0.0);
    if (cdoc.contains("satellites")) {
      for (const auto& sdoc : cdoc["satellites"]) {
        if (!sdoc.contains("id") || !sdoc["id"].is_string()) {
          throw InputError("satellite in constellation '" + c.id +
                           "': missing string field 'id'");
        }
        Satellite sat;
        sat.id = sdoc["id"].get<std::string>();
        sat.position = parse_position(sdoc.value("position", json::array()),
                                      s.dimension, "satellite '" + sat.id + "'");
        c.satellites.push_back(std::move(sat));
      }
    }
    s.constellations.push_back(std::move(c));
  }

  if (doc.contains("receivers")) {
    for (const auto& rdoc : doc["receivers"]) {
      if (!rdoc.contains("id") || !rdoc["id"].is_string()) {
        throw InputError("receiver: missing string field 'id'");
      }
      Receiver r;
      r.id = rdoc["id"].get<std::string>();
      r.position = parse_position(rdoc.value("position", json::array()),
                                  s.dimension, "receiver '" + r.id + "'");
      r.bias = rdoc.value("bias", 0.0);
      s.receivers.push_back(std::move(r));
    }
  }

  auto parse_id_pairs = [&doc](const char* key) {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!doc.contains(key)) return pairs;
    for (const auto& item : doc[key]) {
      if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
          !item[1].is_string()) {
        throw InputError(std::string(key) + " entries must be string id pairs");
      }
      pairs.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
    }
    return pairs;
  };
  s.pseudoranges = parse_id_pairs("pseudoranges");
  s.distances = parse_id_pairs("distances");
  s.noise_sigma = doc.value("noise_sigma", 0.0);
  if (s.noise_sigma < 0.0) throw InputError("scenario: noise_sigma must be >= 0");

  try {
    index_scenario(s);            // id uniqueness
    build_gnss_graph(s);          // arc/edge endpoint validity
  } catch (const std::invalid_argument& err) {
    throw InputError(err.what());
  }
  return s;
}

inline ordered_json scenario_to_json(const Scenario& s) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["dimension"] = s.dimension;
  doc["constellations"] = ordered_json::array();
  for (const Constellation& c : s.constellations) {
    ordered_json cdoc;
    cdoc["id"] = c.id;
    cdoc["bias"] = c.bias;
    cdoc["satellites"] = ordered_json::array();
    for (const Satellite& sat : c.satellites) {
      ordered_json sdoc;
      sdoc["id"] = sat.id;
      sdoc["position"] = std::vector<double>(sat.position.data(),
                                             sat.position.data() + sat.position.size());
      cdoc["satellites"].push_back(std::move(sdoc));
    }
    doc["constellations"].push_back(std::move(cdoc));
  }
  doc["receivers"] = ordered_json::array();
  for (const Receiver& r : s.receivers) {
    ordered_json rdoc;
    rdoc["id"] = r.id;
    rdoc["position"] = std::vector<double>(r.position.data(),
                                           r.position.data() + r.position.size());
    rdoc["bias"] = r.bias;
    doc["receivers"].push_back(std::move(rdoc));
  }
  doc["pseudoranges"] = ordered_json::array();
  for (const auto& [a, b] : s.pseudoranges) doc["pseudoranges"].push_back({a, b});
  doc["distances"] = ordered_json::array();
  for (const auto& [a, b] : s.distances) doc["distances"].push_back({a, b});
  doc["noise_sigma"] = s.noise_sigma;
  return doc;
}

inline Scenario load_scenario_file(const std::string& path) {
  return scenario_from_json(parse_json(read_file(path), path));
}

inline LoadedGraph load_graph_file(const std::string& path) {
  return graph_from_json(parse_json(read_file(path), path));
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace prr
