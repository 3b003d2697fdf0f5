#include "restnorm/golden.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "restnorm/errors.hpp"

namespace restnorm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json map_to_json(const std::map<int, double>& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

std::map<int, double> map_from_json(const ordered_json& j, const char* field) {
  if (!j.is_object()) {
    throw UsageError(std::string("golden table: field '") + field +
                     "' must be an object");
  }
  std::map<int, double> m;
  for (const auto& [k, v] : j.items()) {
    m[std::stoi(k)] = v.get<double>();
  }
  return m;
}

const ordered_json& require(const ordered_json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw UsageError(std::string("golden table: missing field '") + field + "'");
  }
  return *it;
}

}  // namespace

GoldenTable load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("golden table: cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("golden table: parse failure in " + path + ": " + e.what());
  }
  GoldenTable t;
  t.stirling_envelope = map_from_json(require(j, "stirling_envelope"), "stirling_envelope");
  t.local_sum_ceiling = map_from_json(require(j, "local_sum_ceiling"), "local_sum_ceiling");
  t.lower_sum_floor = map_from_json(require(j, "lower_sum_floor"), "lower_sum_floor");
  t.box_excess = map_from_json(require(j, "box_excess"), "box_excess");
  t.c_alpha_reference = map_from_json(require(j, "c_alpha_reference"), "c_alpha_reference");
  t.kernel_sum_ratio = require(j, "kernel_sum_ratio").get<double>();
  t.smoothed_slack = require(j, "smoothed_slack").get<double>();
  t.provenance = j.value("provenance", std::string{});
  return t;
}

void save_golden(const GoldenTable& table, const std::string& path) {
  ordered_json j;
  j["schema"] = "restnorm/golden/v1";
  j["provenance"] = table.provenance;
  j["stirling_envelope"] = map_to_json(table.stirling_envelope);
  j["local_sum_ceiling"] = map_to_json(table.local_sum_ceiling);
  j["lower_sum_floor"] = map_to_json(table.lower_sum_floor);
  j["box_excess"] = map_to_json(table.box_excess);
  j["c_alpha_reference"] = map_to_json(table.c_alpha_reference);
  j["kernel_sum_ratio"] = table.kernel_sum_ratio;
  j["smoothed_slack"] = table.smoothed_slack;
  std::ofstream out(path);
  if (!out) throw UsageError("golden table: cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string default_golden_path() {
  if (const char* env = std::getenv("RESTNORM_GOLDEN")) return env;
#ifdef RESTNORM_GOLDEN_DEFAULT
  return RESTNORM_GOLDEN_DEFAULT;
#else
  return "data/golden.json";
#endif
}

}  // namespace restnorm
