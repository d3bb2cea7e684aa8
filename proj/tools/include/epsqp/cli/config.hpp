#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace epsqp::cli {

inline constexpr const char* kRegistryVersion = "epsqp-scenarios/1";

/// Bad flags, config file or scenario name; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::size_t grid_n = 256;          ///< points per axis for 1D lines and 2D grids
    double extent = 10.0;              ///< grids span [-extent, extent)
    std::size_t profile_grid_n = 128;  ///< line used for pointwise quantum-potential checks
    double dt = 1e-3;
    double t = 0.7;                    ///< evaluation time for time-dependent states
    std::vector<double> alphas{-1.0, -0.75, -0.5, -0.25, 0.0};
    std::string out_dir = "epsqp-out";
    bool parallel = false;
    std::vector<std::string> fields;
};

/// Overlay the keys of a JSON config file onto `config`. Unknown keys are an error.
void apply_config_file(RunConfig& config, const std::string& path);

/// "a,b,c" -> {a, b, c}.
std::vector<double> parse_number_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

/// Throws UsageError when a value is out of range.
void validate(const RunConfig& config);

}  // namespace epsqp::cli
