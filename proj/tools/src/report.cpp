#include "epsqp/cli/report.hpp"

#include <cstdio>
#include <fstream>

#include <epsqp/error.hpp>

#include "epsqp/cli/registry.hpp"

namespace epsqp::cli {

using nlohmann::ordered_json;

namespace {

const char* bound_name(Bound b) { return b == Bound::Upper ? "below" : "at_least"; }

const char* norm_name(NormKind k) { return k == NormKind::FieldL2 ? "field_l2" : "density_weighted"; }

ordered_json registry_json() {
    const RunConfig defaults;
    ordered_json tol = ordered_json::array();
    for (const Tolerance& t : tolerances())
        tol.push_back({{"key", t.key}, {"value", t.value}, {"bound", bound_name(t.bound)}, {"meaning", t.meaning}});
    return {{"version", kRegistryVersion},
            {"defaults",
             {{"grid_n", defaults.grid_n},
              {"extent", defaults.extent},
              {"profile_grid_n", defaults.profile_grid_n},
              {"dt", defaults.dt},
              {"t", defaults.t},
              {"alphas", defaults.alphas}}},
            {"tolerance_scaling", "none: every bound is fixed and applies unchanged from grid_n = 128 upward"},
            {"tolerances", tol},
            {"fixed_inputs", fixed_inputs()}};
}

ordered_json config_json(const RunConfig& c) {
    return {{"grid_n", c.grid_n}, {"extent", c.extent}, {"profile_grid_n", c.profile_grid_n}, {"dt", c.dt},
            {"t", c.t},           {"alphas", c.alphas}, {"parallel", c.parallel},             {"fields", c.fields}};
}

ordered_json result_json(const ScenarioResult& r) {
    ordered_json checks = ordered_json::array();
    for (const Check& c : r.checks) {
        ordered_json j{{"name", c.name},
                       {"tolerance", c.tolerance_key},
                       {"value", c.value},
                       {"bound", c.bound},
                       {"direction", bound_name(c.direction)},
                       {"status", c.passed ? "PASS" : "FAIL"}};
        if (!c.note.empty()) j["note"] = c.note;
        checks.push_back(std::move(j));
    }
    ordered_json residuals = ordered_json::array();
    for (const ResidualReport& rep : r.residuals) {
        ordered_json meta = ordered_json::object();
        for (const auto& [k, v] : rep.metadata) meta[k] = v;
        residuals.push_back({{"name", rep.name},
                             {"norm_kind", norm_name(rep.norm_kind)},
                             {"l2_norm", rep.l2_norm},
                             {"max_norm", rep.max_norm},
                             {"masked_fraction", rep.masked_fraction},
                             {"metadata", meta}});
    }
    return {{"name", r.name}, {"status", r.passed() ? "PASS" : "FAIL"}, {"checks", checks},
            {"residuals", residuals}, {"fits", r.fits}};
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ordered_json build_report(const std::string& requested, const RunConfig& config,
                          const std::vector<ScenarioResult>& results) {
    ordered_json out = ordered_json::array();
    ordered_json failed = ordered_json::array();
    std::size_t total = 0;
    for (const ScenarioResult& r : results) {
        out.push_back(result_json(r));
        for (const Check& c : r.checks) {
            ++total;
            if (!c.passed) failed.push_back(r.name + "/" + c.name);
        }
    }
    return {{"registry", registry_json()},
            {"scenario", requested},
            {"config", config_json(config)},
            {"results", out},
            {"summary",
             {{"checks", total}, {"failed", failed.size()}, {"status", failed.empty() ? "PASS" : "FAIL"},
              {"failed_checks", failed}}}};
}

void write_field_csv(const FieldData& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    if (const auto* f = std::get_if<Field2D>(&field)) {
        out << "p,q,re,im\n";
        for (std::size_t iq = 0; iq < f->grid.nq(); ++iq)
            for (std::size_t ip = 0; ip < f->grid.np(); ++ip) {
                const cplx z = f->values[f->grid.index(ip, iq)];
                out << g17(f->grid.p_axis.point(ip)) << ',' << g17(f->grid.q_axis.point(iq)) << ',' << g17(z.real())
                    << ',' << g17(z.imag()) << '\n';
            }
    } else {
        const auto& l = std::get<Field1D>(field);
        out << l.axis << ",value,masked\n";
        for (std::size_t i = 0; i < l.grid.size(); ++i)
            out << g17(l.grid.point(i)) << ',' << g17(l.values[i]) << ',' << (l.mask[i] ? 0 : 1) << '\n';
    }
    if (!out) throw Error("failed while writing " + path);
}

}  // namespace epsqp::cli
