#include "epsqp/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epsqp::cli {

namespace {

bool power_of_two(std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; }

template <class T>
T get_as(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("config: key '" + key + "' has the wrong type");
    }
}

}  // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot read " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config: " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "grid_n") config.grid_n = get_as<std::size_t>(value, key);
        else if (key == "extent") config.extent = get_as<double>(value, key);
        else if (key == "profile_grid_n") config.profile_grid_n = get_as<std::size_t>(value, key);
        else if (key == "dt") config.dt = get_as<double>(value, key);
        else if (key == "t") config.t = get_as<double>(value, key);
        else if (key == "alphas") config.alphas = get_as<std::vector<double>>(value, key);
        else if (key == "out") config.out_dir = get_as<std::string>(value, key);
        else if (key == "parallel") config.parallel = get_as<bool>(value, key);
        else if (key == "fields") config.fields = get_as<std::vector<std::string>>(value, key);
        else throw UsageError("config: unknown key '" + key + "'");
    }
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : parse_name_list(text)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
        if (used != item.size()) throw UsageError("not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
        out.push_back(item.substr(first, last - first + 1));
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

void validate(const RunConfig& c) {
    if (!power_of_two(c.grid_n)) throw UsageError("grid-n must be a power of two >= 8");
    if (!power_of_two(c.profile_grid_n)) throw UsageError("profile-grid-n must be a power of two >= 8");
    if (!(std::isfinite(c.extent) && c.extent > 0.0)) throw UsageError("extent must be positive");
    if (!(std::isfinite(c.dt) && c.dt > 0.0 && c.dt < 0.1)) throw UsageError("dt must lie in (0, 0.1)");
    if (!(std::isfinite(c.t) && c.t - c.dt > 0.0)) throw UsageError("t must exceed dt");
    if (c.alphas.size() < 3) throw UsageError("alphas needs at least three values");
    bool has_half = false;
    for (std::size_t i = 0; i < c.alphas.size(); ++i) {
        if (!std::isfinite(c.alphas[i])) throw UsageError("alphas must be finite");
        if (i > 0 && !(c.alphas[i] > c.alphas[i - 1])) throw UsageError("alphas must be strictly increasing");
        if (c.alphas[i] == -0.5) has_half = true;
    }
    if (!has_half) throw UsageError("alphas must contain -0.5");
    if (c.out_dir.empty()) throw UsageError("out must not be empty");
}

}  // namespace epsqp::cli
