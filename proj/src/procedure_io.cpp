#include "zxs/procedure_io.hpp"

#include <filesystem>

#include <json.hpp>

#include "zxs/diagram_io.hpp"

namespace zxs {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ProcedureError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ProcedureError(where + ": missing '" + key + "'");
  return *it;
}

std::string need_string(const json& obj, const char* key, const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_string()) throw ProcedureError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> need_labels(const json& obj, const char* key, const std::string& where, std::size_t count) {
  const json& v = need(obj, key, where);
  if (!v.is_array() || (count && v.size() != count)) {
    throw ProcedureError(where + "." + key + ": expected an array of " + (count ? std::to_string(count) + " " : "") +
                         "labels");
  }
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ProcedureError(where + "." + key + ": labels must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

int optional_cond(const json& obj, const std::string& where) {
  if (!obj.contains("cond")) return kAlways;
  const json& c = obj["cond"];
  if (!c.is_number_integer()) throw ProcedureError(where + ".cond: expected an integer");
  int v = c.get<int>();
  if (v < kAlways) throw ProcedureError(where + ".cond: must be an outcome index or -1");
  return v;
}

RationalPhase phase_field(const json& obj, const std::string& where) {
  if (!obj.contains("phase")) return {};
  const json& p = obj["phase"];
  const json& num = need(p, "num", where + ".phase");
  const json& den = need(p, "den", where + ".phase");
  if (!num.is_number_integer() || !den.is_number_integer()) throw ProcedureError(where + ".phase: expected integers");
  if (den.get<std::int64_t>() == 0) throw ProcedureError(where + ".phase: denominator is zero");
  return {num.get<std::int64_t>(), den.get<std::int64_t>()};
}

Convention conv_field(const json& obj, const std::string& where) {
  if (!obj.contains("conv")) return Convention::correct_first;
  const json& c = obj["conv"];
  if (!c.is_string()) throw ProcedureError(where + ".conv: expected \"first\" or \"second\"");
  try {
    return convention_from_string(c.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ProcedureError(where + ".conv: " + e.what());
  }
}

}  // namespace

Procedure parse_procedure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProcedureError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ProcedureError("top level: expected an object");
  if (need_string(doc, "version", "top level") != kProcedureFormat) {
    throw ProcedureError("version: expected \"" + std::string(kProcedureFormat) + "\"");
  }
  Procedure p;
  if (doc.contains("name") && doc["name"].is_string()) p.name = doc["name"].get<std::string>();
  p.inputs = need_labels(doc, "inputs", "top level", 0);
  p.outputs = need_labels(doc, "outputs", "top level", 0);
  const json& ops = need(doc, "ops", "top level");
  if (!ops.is_array()) throw ProcedureError("ops: expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string where = "ops[" + std::to_string(i) + "]";
    const json& o = ops[i];
    const std::string kind = need_string(o, "op", where);
    const int cond = optional_cond(o, where);
    if (kind == "prep_g" || kind == "prep_r") {
      std::string q = need_string(o, "q", where);
      RationalPhase ph = phase_field(o, where);
      p.ops.push_back(kind == "prep_g" ? SurgeryOp::prep_green(q, ph, cond) : SurgeryOp::prep_red(q, ph, cond));
    } else if (kind == "split_s" || kind == "split_r") {
      auto out = need_labels(o, "out", where, 2);
      p.ops.push_back(SurgeryOp::split(kind == "split_s" ? SurgeryKind::smooth : SurgeryKind::rough,
                                       need_string(o, "q", where), out[0], out[1], cond));
    } else if (kind == "merge_s" || kind == "merge_r") {
      auto in = need_labels(o, "in", where, 2);
      p.ops.push_back(SurgeryOp::merge(kind == "merge_s" ? SurgeryKind::smooth : SurgeryKind::rough, in[0], in[1],
                                       need_string(o, "out", where), conv_field(o, where), cond));
    } else if (kind == "measure_z" || kind == "measure_x") {
      std::string q = need_string(o, "q", where);
      p.ops.push_back(kind == "measure_z" ? SurgeryOp::measure_z(q, cond) : SurgeryOp::measure_x(q, cond));
    } else if (kind == "pauli_if") {
      std::string pl = need_string(o, "p", where);
      if (pl != "x" && pl != "z" && pl != "X" && pl != "Z") throw ProcedureError(where + ".p: expected \"x\" or \"z\"");
      if (!o.contains("cond")) throw ProcedureError(where + ": missing 'cond'");
      p.ops.push_back(SurgeryOp::pauli_if(need_string(o, "q", where), static_cast<char>(std::toupper(pl[0])), cond));
    } else {
      throw ProcedureError(where + ".op: unknown operation '" + kind + "'");
    }
  }
  validate_procedure(p);
  return p;
}

Procedure read_procedure(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ProcedureError(e.what());
  }
  try {
    Procedure p = parse_procedure(text);
    if (p.name.empty()) p.name = std::filesystem::path(path).stem().string();
    return p;
  } catch (const ProcedureError& e) {
    throw ProcedureError(path + ": " + e.what());
  }
}

std::string procedure_to_json(const Procedure& p) {
  ordered_json doc;
  doc["version"] = kProcedureFormat;
  doc["name"] = p.name;
  doc["inputs"] = p.inputs;
  ordered_json ops = ordered_json::array();
  for (const auto& op : p.ops) {
    ordered_json o;
    o["op"] = to_string(op.type);
    switch (op.type) {
      case OpType::prep_green:
      case OpType::prep_red:
        o["q"] = op.out[0];
        o["phase"] = {{"num", op.phase.num()}, {"den", op.phase.den()}};
        break;
      case OpType::split_smooth:
      case OpType::split_rough:
        o["q"] = op.in[0];
        o["out"] = op.out;
        break;
      case OpType::merge_smooth:
      case OpType::merge_rough:
        o["in"] = op.in;
        o["out"] = op.out[0];
        o["conv"] = to_string(op.conv);
        break;
      case OpType::measure_z:
      case OpType::measure_x:
        o["q"] = op.in[0];
        break;
      case OpType::pauli:
        o["q"] = op.in[0];
        o["p"] = std::string(1, static_cast<char>(std::tolower(op.pauli)));
        break;
    }
    if (op.type == OpType::pauli || op.cond != kAlways) o["cond"] = op.cond;
    ops.push_back(std::move(o));
  }
  doc["ops"] = std::move(ops);
  doc["outputs"] = p.outputs;
  return doc.dump(2) + "\n";
}

Procedure load_procedure(const std::string& name_or_path) {
  for (const auto& name : builtin_names())
    if (name == name_or_path) return builtin_procedure(name);
  return read_procedure(name_or_path);
}

}  // namespace zxs
