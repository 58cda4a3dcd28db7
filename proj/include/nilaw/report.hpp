#pragma once

#include <string>

#include "json.hpp"
#include "nilaw/group.hpp"

namespace nilaw {

using Json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

// Every run emits one structured document with these fixed top-level fields:
// {tool_version, group, operation, params, seed, result, elapsed_ms}.
// elapsed_ms is the only field that may differ between identical runs;
// strip_timing() removes it for golden-file comparison and hashing.
struct Report {
  Json group;
  std::string operation;
  Json params = Json::object();
  Json seed;  // null unless the run sampled
  Json result = Json::object();
  double elapsed_ms = 0.0;

  Json to_json() const;
  std::string render() const;
  static Report from_json_text(const std::string& text);
};

Json group_json(const Group& g, const std::string& spec);
Json strip_timing(Json j);

}  // namespace nilaw
