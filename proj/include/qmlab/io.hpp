#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph_view.hpp"
#include "polygonal.hpp"
#include "presentation.hpp"

namespace qmlab {

struct IoError : Error {
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

inline GraphProduct load_presentation(const nlohmann::json& doc) {
  try {
    std::vector<std::string> names;
    std::vector<VertexGroup> groups;
    for (const auto& v : doc.at("vertices")) {
      names.push_back(v.at("name").get<std::string>());
      const auto& g = v.at("group");
      const auto type = g.at("type").get<std::string>();
      if (type == "cyclic")
        groups.push_back(VertexGroup::cyclic(g.at("n").get<int>()));
      else if (type == "table")
        groups.push_back(VertexGroup::from_table(g.at("table").get<std::vector<std::vector<int>>>()));
      else
        throw InputError("unknown group type " + type);
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    DefGraph probe(names, {});
    for (VertexId a = 0; a < probe.size(); ++a)
      for (VertexId b = a + 1; b < probe.size(); ++b)
        if (names[a] == names[b]) throw InputError("duplicate vertex name " + names[a]);
    if (doc.contains("edges"))
      for (const auto& e : doc.at("edges")) {
        if (e.size() != 2) throw InputError("edge must have two endpoints");
        auto a = probe.find(e[0].get<std::string>()), b = probe.find(e[1].get<std::string>());
        if (!a || !b) throw InputError("edge names an unknown vertex");
        edges.emplace_back(*a, *b);
      }
    return GraphProduct(DefGraph(std::move(names), edges), std::move(groups));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed presentation: ") + e.what());
  }
}

inline GraphProduct load_presentation_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("presentation is not JSON: ") + e.what());
  }
  return load_presentation(doc);
}

inline GraphProduct load_presentation_file(const std::string& path) { return load_presentation_text(read_file(path)); }

struct ParsedWord {
  Word word;
  bool cyclic = false;
};

// Tokens "vertex:element", optionally suffixed "^-1"; a leading "cyclic"
// marks a cyclic word.
inline ParsedWord parse_word(const GraphProduct& gp, const std::string& text) {
  ParsedWord out;
  std::istringstream in(text);
  std::string tok;
  bool first = true;
  while (in >> tok) {
    if (first && tok == "cyclic") {
      out.cyclic = true;
      first = false;
      continue;
    }
    first = false;
    bool inverse = false;
    if (tok.size() > 3 && tok.ends_with("^-1")) {
      inverse = true;
      tok.resize(tok.size() - 3);
    }
    auto colon = tok.rfind(':');
    if (colon == std::string::npos) throw InputError("token without ':' in word: " + tok);
    auto v = gp.graph.find(tok.substr(0, colon));
    if (!v) throw InputError("unknown vertex in word: " + tok);
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(tok.substr(colon + 1), &used);
      if (used != tok.size() - colon - 1) throw InputError("bad element index in word: " + tok);
    } catch (const std::logic_error&) {
      throw InputError("bad element index in word: " + tok);
    }
    if (e <= 0 || e >= gp.group(*v).order()) throw InputError("element index out of range: " + tok);
    out.word.push_back({*v, inverse ? gp.group(*v).inv(e) : e});
  }
  return out;
}

inline std::string format_word(const GraphProduct& gp, std::span<const Syllable> w) {
  std::string s;
  for (const auto& x : w) {
    if (!s.empty()) s += ' ';
    s += gp.graph.name(x.vertex) + ":" + std::to_string(x.element);
  }
  return s;
}

// Letters "s3", "t_v(s3)", each optionally suffixed "^-1".
inline std::vector<Letter> parse_letters(const Alphabet& a, const std::string& text) {
  std::vector<Letter> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const std::string orig = tok;
    Letter l;
    if (tok.size() > 3 && tok.ends_with("^-1")) {
      l.inverse = true;
      tok.resize(tok.size() - 3);
    }
    if (tok.starts_with("t_")) {
      auto open = tok.find('(');
      if (open == std::string::npos || !tok.ends_with(")")) throw InputError("bad letter: " + orig);
      auto v = a.gp().graph.find(tok.substr(2, open - 2));
      if (!v) throw InputError("unknown vertex in letter: " + orig);
      l.projection = *v;
      tok = tok.substr(open + 1, tok.size() - open - 2);
    }
    if (tok.size() < 2 || tok[0] != 's') throw InputError("bad letter: " + orig);
    try {
      std::size_t used = 0;
      l.generator = std::stoi(tok.substr(1), &used);
      if (used != tok.size() - 1) throw InputError("bad letter: " + orig);
    } catch (const std::logic_error&) {
      throw InputError("bad letter: " + orig);
    }
    if (l.generator < 0 || l.generator >= a.generators()) throw InputError("unknown generator: " + orig);
    out.push_back(l);
  }
  return out;
}

inline std::string format_letters(const Alphabet& a, std::span<const Letter> w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += a.name(l);
  }
  return s;
}

struct ReduceInput {
  Alphabet alphabet;
  std::vector<Letter> word;
};

// {"images": ["v:1 w:1", ...], "word": "t_v(s0) s1 ..."}; image i belongs to s_i.
inline ReduceInput load_reduce_input(const GraphProduct& gp, const nlohmann::json& doc) {
  try {
    std::vector<NormalForm> images;
    for (const auto& img : doc.at("images")) images.push_back(normal_form(gp, parse_word(gp, img.get<std::string>()).word));
    Alphabet a(gp, std::move(images));
    auto word = parse_letters(a, doc.value("word", std::string{}));
    return {std::move(a), std::move(word)};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed reduce input: ") + e.what());
  }
}

// Node and edge attributes for graph exports.
struct ExportNode {
  std::string id;
  std::vector<std::pair<std::string, std::string>> attrs;
};

struct ExportGraph {
  std::string name = "G";
  std::vector<ExportNode> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<std::string, std::string>>> edge_attrs;  // parallel to edges, may be empty
};

inline ExportGraph export_graph(const GraphView& g, const std::string& name = "G") {
  ExportGraph out;
  out.name = name;
  for (int i = 0; i < g.size(); ++i) out.nodes.push_back({std::to_string(i), {}});
  out.edges = g.edges();
  return out;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  return out;
}

inline std::string attr_list(const std::vector<std::pair<std::string, std::string>>& attrs) {
  if (attrs.empty()) return "";
  std::string s = " [";
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (i) s += ", ";
    s += attrs[i].first + "=" + dot_quote(attrs[i].second);
  }
  return s + "]";
}

}  // namespace detail

inline std::string to_dot(const ExportGraph& g) {
  std::string s = "graph " + detail::dot_quote(g.name) + " {\n";
  for (const auto& n : g.nodes) s += "  " + detail::dot_quote(n.id) + detail::attr_list(n.attrs) + ";\n";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [a, b] = g.edges[i];
    s += "  " + detail::dot_quote(g.nodes[a].id) + " -- " + detail::dot_quote(g.nodes[b].id);
    if (i < g.edge_attrs.size()) s += detail::attr_list(g.edge_attrs[i]);
    s += ";\n";
  }
  return s + "}\n";
}

inline std::string to_graphml(const ExportGraph& g) {
  std::vector<std::string> node_keys, edge_keys;
  auto note = [](std::vector<std::string>& keys, const std::string& k) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  };
  for (const auto& n : g.nodes)
    for (const auto& [k, v] : n.attrs) note(node_keys, k);
  for (const auto& ea : g.edge_attrs)
    for (const auto& [k, v] : ea) note(edge_keys, k);
  std::string s =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  for (const auto& k : node_keys)
    s += "  <key id=\"n_" + detail::xml_escape(k) + "\" for=\"node\" attr.name=\"" + detail::xml_escape(k) +
         "\" attr.type=\"string\"/>\n";
  for (const auto& k : edge_keys)
    s += "  <key id=\"e_" + detail::xml_escape(k) + "\" for=\"edge\" attr.name=\"" + detail::xml_escape(k) +
         "\" attr.type=\"string\"/>\n";
  s += "  <graph id=\"" + detail::xml_escape(g.name) + "\" edgedefault=\"undirected\">\n";
  for (const auto& n : g.nodes) {
    s += "    <node id=\"" + detail::xml_escape(n.id) + "\"";
    if (n.attrs.empty()) {
      s += "/>\n";
      continue;
    }
    s += ">\n";
    for (const auto& [k, v] : n.attrs)
      s += "      <data key=\"n_" + detail::xml_escape(k) + "\">" + detail::xml_escape(v) + "</data>\n";
    s += "    </node>\n";
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    auto [a, b] = g.edges[i];
    s += "    <edge source=\"" + detail::xml_escape(g.nodes[a].id) + "\" target=\"" + detail::xml_escape(g.nodes[b].id) +
         "\"";
    if (i >= g.edge_attrs.size() || g.edge_attrs[i].empty()) {
      s += "/>\n";
      continue;
    }
    s += ">\n";
    for (const auto& [k, v] : g.edge_attrs[i])
      s += "      <data key=\"e_" + detail::xml_escape(k) + "\">" + detail::xml_escape(v) + "</data>\n";
    s += "    </edge>\n";
  }
  return s + "  </graph>\n</graphml>\n";
}

inline nlohmann::ordered_json to_json(const ExportGraph& g) {
  nlohmann::ordered_json j;
  j["name"] = g.name;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : g.nodes) {
    nlohmann::ordered_json node;
    node["id"] = n.id;
    for (const auto& [k, v] : n.attrs) node[k] = v;
    j["nodes"].push_back(node);
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    nlohmann::ordered_json e;
    e["source"] = g.nodes[g.edges[i].first].id;
    e["target"] = g.nodes[g.edges[i].second].id;
    if (i < g.edge_attrs.size())
      for (const auto& [k, v] : g.edge_attrs[i]) e[k] = v;
    j["edges"].push_back(e);
  }
  return j;
}

// Raw graph document {"graph": {"vertices": n, "edges": [[a,b],...]}}.
inline GraphView load_graph_view(const nlohmann::json& doc) {
  try {
    const auto& g = doc.at("graph");
    const int n = g.at("vertices").get<int>();
    if (n < 0) throw InputError("negative vertex count");
    GraphView out(n);
    for (const auto& e : g.at("edges")) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("graph edge out of range");
      out.add_edge(a, b);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed graph document: ") + e.what());
  }
}

}  // namespace qmlab
