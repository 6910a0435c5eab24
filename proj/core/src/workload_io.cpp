#include "json.hpp"

#include "cgra/workload.hpp"

namespace cgra {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, 0);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected array");
  return v;
}

ValueRef read_ref(const json& v, const std::string& path) {
  const auto kind = as_string(field(v, "kind", path), path + ".kind");
  const auto index = as_int(field(v, "index", path), path + ".index");
  if (kind == "input") return ValueRef::input(static_cast<int>(index));
  if (kind == "op") return ValueRef::op(static_cast<int>(index));
  schema_error(path + ".kind", "expected \"input\" or \"op\", got \"" + kind + "\"");
}

ordered_json write_ref(const ValueRef& v) {
  ordered_json j;
  j["kind"] = v.is_input() ? "input" : "op";
  j["index"] = v.index;
  return j;
}

Dfg read_dfg(const json& j, const std::string& path) {
  Dfg d;
  d.name = as_string(field(j, "name", path), path + ".name");
  d.num_inputs = static_cast<int>(as_int(field(j, "num_inputs", path), path + ".num_inputs"));
  const auto& ops = as_array(field(j, "ops", path), path + ".ops");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto op_path = path + ".ops[" + std::to_string(i) + "]";
    Operation op;
    op.id = static_cast<int>(as_int(field(ops[i], "id", op_path), op_path + ".id"));
    const auto name = as_string(field(ops[i], "opcode", op_path), op_path + ".opcode");
    const auto opcode = parse_opcode(name);
    if (!opcode) schema_error(op_path + ".opcode", "unknown opcode \"" + name + "\"");
    op.opcode = *opcode;
    const auto& srcs = as_array(field(ops[i], "srcs", op_path), op_path + ".srcs");
    for (std::size_t k = 0; k < srcs.size(); ++k)
      op.sources.push_back(read_ref(srcs[k], op_path + ".srcs[" + std::to_string(k) + "]"));
    d.ops.push_back(std::move(op));
  }
  const auto& outs = as_array(field(j, "outputs", path), path + ".outputs");
  for (std::size_t k = 0; k < outs.size(); ++k)
    d.outputs.push_back(read_ref(outs[k], path + ".outputs[" + std::to_string(k) + "]"));
  return d;
}

}  // namespace

Workload parse_workload(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }

  const auto format = as_int(field(root, "format", "$"), "$.format");
  if (format != kWorkloadFormatVersion)
    schema_error("$.format", "unsupported format version " + std::to_string(format));

  Workload w;
  const auto& dfgs = as_array(field(root, "dfgs", "$"), "$.dfgs");
  for (std::size_t k = 0; k < dfgs.size(); ++k)
    w.dfgs.push_back(read_dfg(dfgs[k], "$.dfgs[" + std::to_string(k) + "]"));

  const auto& trace = as_array(field(root, "trace", "$"), "$.trace");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto path = "$.trace[" + std::to_string(i) + "]";
    const auto& entry = as_array(trace[i], path);
    if (entry.size() != 2) schema_error(path, "expected [dfg_index, repeat_count]");
    const auto index = as_int(entry[0], path + "[0]");
    const auto repeat = as_int(entry[1], path + "[1]");
    if (index < 0) throw SemanticError(path + ": negative dfg index");
    if (repeat < 1) throw SemanticError(path + ": repeat count must be >= 1");
    w.trace.push_back({static_cast<std::size_t>(index), static_cast<std::uint64_t>(repeat)});
  }

  validate_workload(w);
  return w;
}

std::string serialize_workload(const Workload& w) {
  ordered_json root;
  root["format"] = kWorkloadFormatVersion;
  root["dfgs"] = ordered_json::array();
  for (const auto& d : w.dfgs) {
    ordered_json jd;
    jd["name"] = d.name;
    jd["num_inputs"] = d.num_inputs;
    jd["ops"] = ordered_json::array();
    for (const auto& op : d.ops) {
      ordered_json jo;
      jo["id"] = op.id;
      jo["opcode"] = opcode_name(op.opcode);
      jo["srcs"] = ordered_json::array();
      for (const auto& s : op.sources) jo["srcs"].push_back(write_ref(s));
      jd["ops"].push_back(std::move(jo));
    }
    jd["outputs"] = ordered_json::array();
    for (const auto& o : d.outputs) jd["outputs"].push_back(write_ref(o));
    root["dfgs"].push_back(std::move(jd));
  }
  root["trace"] = ordered_json::array();
  for (const auto& e : w.trace) root["trace"].push_back({e.dfg_index, e.repeat_count});
  return root.dump(2) + "\n";
}

}  // namespace cgra
