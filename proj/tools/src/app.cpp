#include "epsqp/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include <epsqp/error.hpp>

#include "epsqp/cli/report.hpp"
#include "epsqp/cli/scenarios.hpp"

namespace epsqp::cli {

namespace {

struct Flags {
    std::string scenario;
    std::string config_path;
    std::size_t grid_n = 0;
    std::size_t profile_grid_n = 0;
    double extent = 0.0;
    double dt = 0.0;
    double t = 0.0;
    std::string alphas;
    std::string out;
    std::string fields;
    bool parallel = false;
};

bool offers(const ScenarioInfo& info, const std::string& field) {
    return std::find(info.fields.begin(), info.fields.end(), field) != info.fields.end();
}

std::vector<ScenarioInfo> selected(const std::string& name) {
    if (name == "all") return scenarios();
    for (const ScenarioInfo& s : scenarios())
        if (s.name == name) return {s};
    throw UsageError("unknown scenario '" + name + "'");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw UsageError("cannot write " + path.string());
}

int run_scenarios(const Flags& flags, CLI::App& run, std::ostream& out, std::ostream& err) {
    RunConfig config;
    if (!flags.config_path.empty()) apply_config_file(config, flags.config_path);
    if (run.count("--grid-n")) config.grid_n = flags.grid_n;
    if (run.count("--profile-grid-n")) config.profile_grid_n = flags.profile_grid_n;
    if (run.count("--extent")) config.extent = flags.extent;
    if (run.count("--dt")) config.dt = flags.dt;
    if (run.count("--t")) config.t = flags.t;
    if (run.count("--alphas")) config.alphas = parse_number_list(flags.alphas);
    if (run.count("--out")) config.out_dir = flags.out;
    if (run.count("--fields")) config.fields = parse_name_list(flags.fields);
    if (run.count("--parallel")) config.parallel = true;
    validate(config);

    const std::vector<ScenarioInfo> plan = selected(flags.scenario);
    for (const std::string& f : config.fields)
        if (std::none_of(plan.begin(), plan.end(), [&](const ScenarioInfo& s) { return offers(s, f); }))
            throw UsageError("field '" + f + "' is not produced by scenario '" + flags.scenario + "'");

    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());

    std::vector<ScenarioResult> results;
    nlohmann::ordered_json timings = nlohmann::ordered_json::object();
    for (const ScenarioInfo& info : plan) {
        const auto start = std::chrono::steady_clock::now();
        const auto wants = [&](const std::string& f) {
            return offers(info, f) && std::find(config.fields.begin(), config.fields.end(), f) != config.fields.end();
        };
        ScenarioResult r = run_scenario(info.name, config, wants);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        timings[info.name] = seconds;
        for (const auto& [field, data] : r.fields)
            write_field_csv(data, (dir / (info.name + "." + field + ".csv")).string());
        out << (r.passed() ? "PASS " : "FAIL ") << info.name << '\n';
        for (const Check& c : r.checks)
            if (!c.passed) out << "  FAIL " << c.name << " = " << c.value << " (bound " << c.bound << ")\n";
        err << info.name << ": " << seconds << " s\n";
        results.push_back(std::move(r));
    }

    write_text(dir / "report.json", build_report(flags.scenario, config, results).dump(2) + "\n");
    write_text(dir / "timings.json", timings.dump(2) + "\n");
    const bool ok = std::all_of(results.begin(), results.end(), [](const ScenarioResult& r) { return r.passed(); });
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks of phase-space quantum mechanics", "epsqp"};
    app.require_subcommand(1);
    Flags flags;

    CLI::App* run = app.add_subcommand("run", "Run a scenario and write report.json");
    std::vector<std::string> names{"all"};
    for (const ScenarioInfo& s : scenarios()) names.push_back(s.name);
    run->add_option("scenario", flags.scenario, "Scenario name, or 'all'")->required();
    run->add_option("--config", flags.config_path, "JSON file overriding the built-in defaults");
    run->add_option("--grid-n", flags.grid_n, "Points per axis");
    run->add_option("--profile-grid-n", flags.profile_grid_n, "Points on the quantum-potential profile line");
    run->add_option("--extent", flags.extent, "Grids span [-extent, extent)");
    run->add_option("--dt", flags.dt, "Time step of the central differences");
    run->add_option("--t", flags.t, "Evaluation time");
    run->add_option("--alphas", flags.alphas, "Comma-separated shear parameters");
    run->add_option("--out", flags.out, "Output directory");
    run->add_option("--fields", flags.fields, "Comma-separated fields to dump as CSV");
    run->add_flag("--parallel", flags.parallel, "Evaluate the alpha sweep on several threads");

    CLI::App* list = app.add_subcommand("list", "List the registered scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    if (list->parsed()) {
        for (const ScenarioInfo& s : scenarios()) {
            out << s.name << "  " << s.summary << '\n';
            if (!s.fields.empty()) {
                out << "    fields:";
                for (const std::string& f : s.fields) out << ' ' << f;
                out << '\n';
            }
        }
        out << "all  every scenario above, in order\n";
        return kOk;
    }

    try {
        return run_scenarios(flags, *run, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << run->help();
        return kUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const Error& e) {
        err << "failure: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace epsqp::cli
