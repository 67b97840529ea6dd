#include "zxs/diagram_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zxs {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing '" + key + "'");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

}  // namespace

Diagram parse_diagram(const std::string& text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level: expected an object");

  const json& version = field(doc, "version", "top level");
  if (!version.is_string() || version.get<std::string>() != kDiagramFormat) {
    throw ParseError("version: expected \"" + std::string(kDiagramFormat) + "\"");
  }

  Diagram d;
  if (doc.contains("scalar")) {
    const json& s = doc["scalar"];
    d.set_scalar({as_double(field(s, "re", "scalar"), "scalar.re"), as_double(field(s, "im", "scalar"), "scalar.im")});
  }

  const json& nodes = field(doc, "nodes", "top level");
  if (!nodes.is_array()) throw ParseError("nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const json& jn = nodes[i];
    Node n;
    n.id = static_cast<int>(as_int(field(jn, "id", where), where + ".id"));
    const json& kind = field(jn, "kind", where);
    std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "in") n.kind = NodeKind::input;
    else if (k == "out") n.kind = NodeKind::output;
    else if (k == "z") n.kind = NodeKind::green;
    else if (k == "x") n.kind = NodeKind::red;
    else throw ParseError(where + ".kind: expected one of \"in\", \"out\", \"z\", \"x\"");

    if (is_boundary(n.kind)) {
      n.order = static_cast<int>(as_int(field(jn, "order", where), where + ".order"));
    } else if (jn.contains("phase")) {
      const json& p = jn["phase"];
      std::int64_t num = as_int(field(p, "num", where + ".phase"), where + ".phase.num");
      std::int64_t den = as_int(field(p, "den", where + ".phase"), where + ".phase.den");
      if (den == 0) throw ParseError(where + ".phase: denominator is zero");
      n.phase = RationalPhase(num, den);
      if (warnings && (n.phase.num() != num || n.phase.den() != den)) {
        warnings->push_back(where + ".phase " + std::to_string(num) + "/" + std::to_string(den) + " reduced to " +
                            std::to_string(n.phase.num()) + "/" + std::to_string(n.phase.den()));
      }
    }
    try {
      d.add_node(n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  const json& edges = field(doc, "edges", "top level");
  if (!edges.is_array()) throw ParseError("edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [id, id]");
    int a = static_cast<int>(as_int(e[0], where + "[0]"));
    int b = static_cast<int>(as_int(e[1], where + "[1]"));
    if (!d.has_node(a) || !d.has_node(b)) throw ParseError(where + ": unknown node id");
    d.add_edge(a, b);
  }
  return d;
}

Diagram read_diagram(const std::string& path, std::vector<std::string>* warnings) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what());
  }
  try {
    return parse_diagram(text, warnings);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string diagram_to_json(const Diagram& d) {
  ordered_json doc;
  doc["version"] = kDiagramFormat;
  doc["scalar"] = {{"re", d.scalar().real()}, {"im", d.scalar().imag()}};
  ordered_json nodes = ordered_json::array();
  for (const auto& [id, n] : d.nodes()) {
    ordered_json jn;
    jn["id"] = id;
    jn["kind"] = to_string(n.kind);
    if (is_boundary(n.kind)) {
      jn["order"] = n.order;
    } else {
      jn["phase"] = {{"num", n.phase.num()}, {"den", n.phase.den()}};
    }
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  for (const auto& e : d.edges()) edges.push_back({e.first, e.second});
  doc["edges"] = std::move(edges);

  // One node or edge per line keeps files readable and diffs small.
  std::string out = "{\n";
  out += "  \"version\": " + doc["version"].dump() + ",\n";
  out += "  \"scalar\": " + doc["scalar"].dump() + ",\n";
  out += "  \"nodes\": [";
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    out += (i ? ",\n    " : "\n    ") + doc["nodes"][i].dump();
  }
  out += doc["nodes"].empty() ? "],\n" : "\n  ],\n";
  out += "  \"edges\": [";
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    out += (i ? ",\n    " : "\n    ") + doc["edges"][i].dump();
  }
  out += doc["edges"].empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

void write_diagram(const Diagram& d, const std::string& path) { write_text_file(path, diagram_to_json(d)); }

std::string diagram_to_dot(const Diagram& d) {
  std::ostringstream os;
  os << "graph zx {\n";
  os << "  rankdir=BT;\n";
  os << "  node [fontsize=10];\n";
  for (const auto& [id, n] : d.nodes()) {
    os << "  n" << id << " [";
    switch (n.kind) {
      case NodeKind::input: os << "shape=point, xlabel=\"in" << n.order << "\""; break;
      case NodeKind::output: os << "shape=point, xlabel=\"out" << n.order << "\""; break;
      case NodeKind::green:
      case NodeKind::red: {
        const char* fill = n.kind == NodeKind::green ? "#ccffcc" : "#ffcccc";
        std::string label = n.phase.is_zero() ? "" : n.phase.str();
        os << "shape=circle, style=filled, fillcolor=\"" << fill << "\", label=\"" << label << "\"";
        break;
      }
    }
    os << "];\n";
  }
  for (const auto& e : d.edges()) os << "  n" << e.first << " -- n" << e.second << ";\n";
  os << "}\n";
  return os.str();
}

void export_dot(const Diagram& d, const std::string& path) { write_text_file(path, diagram_to_dot(d)); }

std::string matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  json doc = {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
  return doc.dump() + "\n";
}

}  // namespace zxs
