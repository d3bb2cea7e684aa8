#pragma once

#include <string>
#include <vector>

namespace epsqp::cli {

enum class Bound { Upper, Lower };

struct Tolerance {
    const char* key;
    double value;
    Bound bound;
    const char* meaning;
};

/// Every tolerance a scenario may check against, in report order.
const std::vector<Tolerance>& tolerances();

/// Throws std::out_of_range for an unknown key.
const Tolerance& tolerance(const std::string& key);

}  // namespace epsqp::cli
