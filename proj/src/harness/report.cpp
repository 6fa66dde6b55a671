#include "json.hpp"

#include "ofdm/harness/experiments.hpp"

namespace ofdm::harness {

std::string report_json(const RunReport& report, const std::string& csv_path) {
  nlohmann::ordered_json j;
  j["report_version"] = 1;
  j["library_version"] = report.library_version;
  j["simd_kernels"] = report.simd_kernels;
  j["experiment"] = std::string(to_string(report.config.experiment));
  j["seed"] = report.config.seed;
  j["wall_seconds"] = report.wall_seconds;
  j["csv_path"] = csv_path;
  j["columns"] = report.table.columns;
  j["rows"] = report.table.rows.size();
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.header) notes[key] = value;
  j["header"] = std::move(notes);
  j["resolved_config"] = nlohmann::ordered_json::parse(to_json(report.config));
  return j.dump(2) + "\n";
}

}  // namespace ofdm::harness
