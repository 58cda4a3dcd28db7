#include "nilaw/report.hpp"

#include "nilaw/error.hpp"

namespace nilaw {

Json Report::to_json() const {
  Json j;
  j["tool_version"] = kToolVersion;
  j["group"] = group;
  j["operation"] = operation;
  j["params"] = params;
  j["seed"] = seed;
  j["result"] = result;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string Report::render() const { return to_json().dump(2) + "\n"; }

Report Report::from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kParse, std::string("report is not valid JSON: ") + e.what());
  }
  Report r;
  r.group = j.value("group", Json());
  r.operation = j.value("operation", std::string());
  r.params = j.value("params", Json::object());
  r.seed = j.contains("seed") ? j["seed"] : Json();
  r.result = j.value("result", Json::object());
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  return r;
}

Json group_json(const Group& g, const std::string& spec) {
  Json j;
  j["name"] = g.name();
  j["order"] = g.order();
  j["spec"] = spec;
  return j;
}

Json strip_timing(Json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [key, value] : j.items()) value = strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_timing(value);
  }
  return j;
}

}  // namespace nilaw
