#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "epsqp/cli/config.hpp"
#include "epsqp/cli/scenarios.hpp"

namespace epsqp::cli {

/// Registry echo (defaults and tolerances), effective config, and results.
/// Contains nothing that varies between identical runs.
nlohmann::ordered_json build_report(const std::string& requested, const RunConfig& config,
                                    const std::vector<ScenarioResult>& results);

/// Writes `field` as CSV with a header row, q-major rows and 17 significant digits.
/// Throws epsqp::Error if the file cannot be written.
void write_field_csv(const FieldData& field, const std::string& path);

}  // namespace epsqp::cli
