#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <epsqp/grid.hpp>
#include <epsqp/numerics.hpp>
#include <epsqp/residual.hpp>

#include "epsqp/cli/config.hpp"
#include "epsqp/cli/registry.hpp"

namespace epsqp::cli {

struct Check {
    std::string name;
    std::string tolerance_key;
    double value;
    double bound;
    Bound direction;
    bool passed;
    std::string note;
};

struct Field2D {
    Grid2D grid;
    CVec values;
};

struct Field1D {
    Grid1D grid;
    RVec values;
    Mask mask;
    std::string axis;  ///< column label: "q" or "p"
};

using FieldData = std::variant<Field2D, Field1D>;

struct ScenarioResult {
    std::string name;
    std::vector<Check> checks;
    std::vector<ResidualReport> residuals;
    nlohmann::ordered_json fits = nlohmann::ordered_json::object();
    std::map<std::string, FieldData> fields;

    bool passed() const;
};

struct ScenarioInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> fields;  ///< selectors accepted by --fields
};

/// Registered scenarios in run order, excluding "all".
const std::vector<ScenarioInfo>& scenarios();

/// Fixed states and physical constants shared by all scenarios.
nlohmann::ordered_json fixed_inputs();

/// Runs one registered scenario. `wants(field)` says which field dumps to keep.
ScenarioResult run_scenario(const std::string& name, const RunConfig& config,
                            const std::function<bool(const std::string&)>& wants);

}  // namespace epsqp::cli
