#include "biplane/stats.hpp"

#include <stdexcept>

namespace biplane {

nlohmann::json StatsDocument::to_json() const {
  return {{"schema", kStatsSchema}, {"command", command},         {"parameters", parameters},
          {"results", results},     {"runtime_seconds", runtime_seconds}, {"nodes", nodes}};
}

StatsDocument StatsDocument::from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != kStatsSchema) throw std::invalid_argument("stats document: unknown schema");
  try {
    StatsDocument d;
    d.command = j.at("command").get<std::string>();
    d.parameters = j.at("parameters");
    d.results = j.at("results");
    d.runtime_seconds = j.at("runtime_seconds").get<double>();
    d.nodes = j.at("nodes").get<std::uint64_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("stats document: ") + e.what());
  }
}

}  // namespace biplane
