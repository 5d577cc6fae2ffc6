#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>

namespace biplane {

inline constexpr const char* kStatsSchema = "biplane-stats/1";

// Result document printed by every command.
struct StatsDocument {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  double runtime_seconds = 0;
  std::uint64_t nodes = 0;

  nlohmann::json to_json() const;
  // Throws std::invalid_argument on a missing field or foreign schema.
  static StatsDocument from_json(const nlohmann::json& j);
  std::string dump() const { return to_json().dump(2); }

  friend bool operator==(const StatsDocument&, const StatsDocument&) = default;
};

}  // namespace biplane
