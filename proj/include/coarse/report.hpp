#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace coarse {

using Json = nlohmann::ordered_json;

inline constexpr const char* kLibraryVersion = "0.3.0";

// Structured verdict emitted by every checker. `witness` holds the first
// violation (or the positive certificate), `details` carries counts and
// measured constants, `notes` records conventions that shaped the verdict.
struct Report {
  std::string check;
  Json params = Json::object();
  std::string mode = "exhaustive";
  std::optional<std::uint64_t> seed;
  bool holds = true;
  Json witness = nullptr;
  Json details = Json::object();
  std::vector<std::string> notes;

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["params"] = params;
    j["mode"] = mode;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["holds"] = holds;
    j["witness"] = witness;
    if (!details.empty()) j["details"] = details;
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }

  // Keeps the first violation as witness and counts the rest.
  void fail(Json w) {
    if (holds) witness = std::move(w);
    holds = false;
    auto& c = details["violations"];
    c = c.is_number() ? c.get<long long>() + 1 : 1;
  }
};

}  // namespace coarse
