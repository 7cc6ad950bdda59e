#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "stable_expand/errors.hpp"
#include "stable_expand/instance.hpp"

namespace stable_expand {
namespace {

using nlohmann::json;

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end())
    throw ParseError(field, fmt::format("missing required field \"{}\"", field));
  return *it;
}

int as_int(const json& value, const std::string& field) {
  if (!value.is_number_integer())
    throw ParseError(field, fmt::format("field \"{}\": expected an integer", field));
  return value.get<int>();
}

std::vector<int> as_int_array(const json& value, const std::string& field) {
  if (!value.is_array())
    throw ParseError(field, fmt::format("field \"{}\": expected an array", field));
  std::vector<int> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(as_int(value[i], fmt::format("{}[{}]", field, i)));
  return out;
}

// File ids are 1-based; shifting keeps out-of-range ids out of range so that
// validate() reports them.
std::vector<std::vector<int>> as_id_lists(const json& value,
                                          const std::string& field) {
  if (!value.is_array())
    throw ParseError(field, fmt::format("field \"{}\": expected an array", field));
  std::vector<std::vector<int>> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    auto ids = as_int_array(value[i], fmt::format("{}[{}]", field, i));
    for (int& id : ids) id -= 1;
    out.push_back(std::move(ids));
  }
  return out;
}

json id_lists_to_json(const std::vector<std::vector<int>>& lists) {
  json out = json::array();
  for (const auto& list : lists) {
    json row = json::array();
    for (const int id : list) row.push_back(id + 1);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

MatchingInstance load_instance(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what());
  }
  if (!doc.is_object()) throw ParseError("", "instance document must be a JSON object");

  InstanceData data;
  data.num_residents = as_int(require(doc, "num_residents"), "num_residents");
  data.num_hospitals = as_int(require(doc, "num_hospitals"), "num_hospitals");
  data.quotas = as_int_array(require(doc, "quotas"), "quotas");
  data.expansion_limits =
      as_int_array(require(doc, "expansion_limits"), "expansion_limits");
  data.budget = as_int(require(doc, "budget"), "budget");
  data.resident_prefs =
      as_id_lists(require(doc, "resident_prefs"), "resident_prefs");
  data.hospital_prefs =
      as_id_lists(require(doc, "hospital_prefs"), "hospital_prefs");
  if (auto it = doc.find("dummy_hospital"); it != doc.end()) {
    if (!it->is_boolean())
      throw ParseError("dummy_hospital",
                       "field \"dummy_hospital\": expected a boolean");
    data.dummy_hospital = it->get<bool>();
  }
  if (auto it = doc.find("seed"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_integer())
      throw ParseError("seed", "field \"seed\": expected an integer");
    data.seed = it->get<std::int64_t>();
  }

  MatchingInstance instance(std::move(data));
  if (auto violations = validate(instance); !violations.empty())
    throw ValidationError(std::move(violations));
  return instance;
}

std::string save_instance(const MatchingInstance& instance) {
  const InstanceData& in = instance.data();
  json doc;
  doc["num_residents"] = in.num_residents;
  doc["num_hospitals"] = in.num_hospitals;
  doc["quotas"] = in.quotas;
  doc["expansion_limits"] = in.expansion_limits;
  doc["budget"] = in.budget;
  doc["resident_prefs"] = id_lists_to_json(in.resident_prefs);
  doc["hospital_prefs"] = id_lists_to_json(in.hospital_prefs);
  if (in.dummy_hospital) doc["dummy_hospital"] = true;
  if (in.seed) doc["seed"] = *in.seed;

  // One top-level key per line, values compact.
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : doc.items()) {
    if (!first) out += ",\n";
    first = false;
    out += fmt::format("  {}: {}", json(key).dump(), value.dump());
  }
  out += "\n}\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

MatchingInstance read_instance_file(const std::filesystem::path& path) {
  return load_instance(read_text_file(path));
}

void write_text_file_atomic(const std::filesystem::path& path,
                            std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(fmt::format("cannot rename {} to {}: {}", tmp.string(),
                            path.string(), ec.message()));
}

}  // namespace stable_expand
