#include <doctest.h>

#include <epsqp/cli/app.hpp>
#include <epsqp/cli/config.hpp>
#include <epsqp/cli/registry.hpp>
#include <epsqp/cli/report.hpp>
#include <epsqp/cli/scenarios.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using namespace epsqp::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "epsqp");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("epsqp_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json report_in(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "report.json")); }

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("list names every scenario") {
        const Outcome o = invoke({"list"});
        CHECK(o.code == kOk);
        for (const char* name : {"harmonic-coherent", "linear-gaussian", "wigner-equivalence", "alpha-sweep",
                                 "pspace-linear", "eps-residuals", "classical-appendix", "all"})
            CHECK(o.out.find(name) != std::string::npos);
    }

    TEST_CASE("usage errors exit with 2") {
        const fs::path dir = scratch("usage");
        const std::string out = dir.string();
        CHECK(invoke({}).code == kUsage);
        const Outcome unknown = invoke({"run", "nosuch", "--out", out});
        CHECK(unknown.code == kUsage);
        CHECK(unknown.err.find("Usage") != std::string::npos);
        CHECK(invoke({"frobnicate"}).code == kUsage);
        CHECK(invoke({"run", "classical-appendix", "--grid-n", "100", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "classical-appendix", "--grid-n", "abc", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "classical-appendix", "--dt", "-1", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "alpha-sweep", "--alphas", "-1,0,0.5", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "alpha-sweep", "--alphas", "0,-0.5,-1", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "alpha-sweep", "--alphas", "-1,x,0", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "classical-appendix", "--bogus", "--out", out}).code == kUsage);
        CHECK_FALSE(fs::exists(dir / "report.json"));
    }

    TEST_CASE("field selectors are validated before running") {
        const std::string out = scratch("selectors").string();
        CHECK(invoke({"run", "harmonic-coherent", "--fields", "", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "harmonic-coherent", "--fields", "wigner", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "classical-appendix", "--fields", "chi", "--out", out}).code == kUsage);
        CHECK(invoke({"run", "all", "--fields", "nonsense", "--out", out}).code == kUsage);
    }

    TEST_CASE("an unwritable output directory is a usage error") {
        CHECK(invoke({"run", "classical-appendix", "--out", "/proc/epsqp-not-here"}).code == kUsage);
    }

    TEST_CASE("a state that has left the grid is a numerical failure") {
        const Outcome o = invoke({"run", "pspace-linear", "--t", "60", "--out", scratch("numerical").string()});
        CHECK(o.code == kNumerical);
        CHECK(o.err.find("masked") != std::string::npos);
    }

    TEST_CASE("exit code 0 exactly when every check passes") {
        const fs::path dir = scratch("exit");
        CHECK(invoke({"run", "classical-appendix", "--out", dir.string()}).code == kOk);
        nlohmann::json r = report_in(dir);
        CHECK(r["summary"]["status"] == "PASS");
        for (const auto& c : r["results"][0]["checks"]) CHECK(c["status"] == "PASS");

        // The linear dynamical-equation residual sits just above its bound at dt = 1e-3.
        CHECK(invoke({"run", "linear-gaussian", "--out", dir.string()}).code == kCheckFailed);
        r = report_in(dir);
        CHECK(r["summary"]["status"] == "FAIL");
        std::size_t failed = 0;
        for (const auto& c : r["results"][0]["checks"]) failed += c["status"] == "FAIL";
        CHECK(failed == r["summary"]["failed"].get<std::size_t>());
        CHECK(failed >= 1);
    }

    TEST_CASE("every check is labelled and bounded by the registry") {
        const fs::path dir = scratch("labels");
        invoke({"run", "eps-residuals", "--out", dir.string()});
        const nlohmann::json r = report_in(dir);
        CHECK(r["registry"]["version"] == kRegistryVersion);
        CHECK(r["registry"]["tolerances"].size() == tolerances().size());
        for (const auto& c : r["results"][0]["checks"]) {
            const std::string status = c["status"];
            CHECK((status == "PASS" || status == "FAIL"));
            CHECK(c["bound"].get<double>() == tolerance(c["tolerance"].get<std::string>()).value);
        }
        CHECK(r["results"][0]["residuals"].size() > 0);
    }

    TEST_CASE("reports are byte-identical across runs and carry no timings") {
        const fs::path a = scratch("det_a");
        const fs::path b = scratch("det_b");
        invoke({"run", "pspace-linear", "--out", a.string()});
        invoke({"run", "pspace-linear", "--out", b.string()});
        const std::string ra = slurp(a / "report.json");
        CHECK(ra == slurp(b / "report.json"));
        CHECK(ra.find("seconds") == std::string::npos);
        CHECK(ra.find(a.string()) == std::string::npos);
        CHECK(nlohmann::json::parse(slurp(a / "timings.json")).contains("pspace-linear"));
    }

    TEST_CASE("parallel sweep gives the same numbers") {
        const fs::path a = scratch("par_a");
        const fs::path b = scratch("par_b");
        invoke({"run", "alpha-sweep", "--grid-n", "128", "--out", a.string()});
        invoke({"run", "alpha-sweep", "--grid-n", "128", "--parallel", "--out", b.string()});
        CHECK(report_in(a)["results"] == report_in(b)["results"]);
    }

    TEST_CASE("alpha sweep report carries the fit") {
        const fs::path dir = scratch("sweep");
        invoke({"run", "alpha-sweep", "--grid-n", "128", "--out", dir.string()});
        const nlohmann::json fits = report_in(dir)["results"][0]["fits"];
        CHECK(fits["entries"].size() == 5);
        CHECK(fits.contains("alpha_star"));
        CHECK(fits["term_fit"].contains("slope"));
        CHECK(fits["term_fit"].contains("r_squared"));
    }

    TEST_CASE("config precedence: defaults < file < flags") {
        const fs::path dir = scratch("precedence");
        fs::create_directories(dir);
        const fs::path cfg = dir / "cfg.json";
        std::ofstream(cfg) << R"({"grid_n": 128, "dt": 0.002, "t": 0.5})";
        invoke({"run", "classical-appendix", "--config", cfg.string(), "--dt", "0.001", "--out", dir.string()});
        const nlohmann::json c = report_in(dir)["config"];
        CHECK(c["grid_n"] == 128);
        CHECK(c["dt"] == 0.001);
        CHECK(c["t"] == 0.5);
        CHECK(c["profile_grid_n"] == RunConfig{}.profile_grid_n);

        std::ofstream(cfg) << R"({"grid_n": "big"})";
        CHECK(invoke({"run", "classical-appendix", "--config", cfg.string(), "--out", dir.string()}).code == kUsage);
        std::ofstream(cfg) << R"({"unknown": 1})";
        CHECK(invoke({"run", "classical-appendix", "--config", cfg.string(), "--out", dir.string()}).code == kUsage);
        CHECK(invoke({"run", "classical-appendix", "--config", (dir / "missing.json").string(), "--out", dir.string()})
                  .code == kUsage);
    }

    TEST_CASE("lower resolution runs the same checks") {
        const fs::path lo = scratch("res_lo");
        const fs::path hi = scratch("res_hi");
        CHECK(invoke({"run", "harmonic-coherent", "--grid-n", "128", "--out", lo.string()}).code == kOk);
        invoke({"run", "harmonic-coherent", "--out", hi.string()});
        const auto a = report_in(lo)["results"][0]["checks"];
        const auto b = report_in(hi)["results"][0]["checks"];
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i]["name"] == b[i]["name"]);
        CHECK(report_in(lo)["registry"].contains("tolerance_scaling"));
    }

    TEST_CASE("2D field CSV: header, q-major rows, 17 digits") {
        const fs::path dir = scratch("csv2d");
        CHECK(invoke({"run", "wigner-equivalence", "--fields", "wigner", "--out", dir.string()}).code == kOk);
        std::ifstream in(dir / "wigner-equivalence.wigner.csv");
        std::string line;
        std::getline(in, line);
        CHECK(line == "p,q,re,im");
        std::vector<std::vector<std::string>> rows;
        while (std::getline(in, line)) rows.push_back(split(line));
        REQUIRE(rows.size() == 256u * 256u);
        // q is the slow index.
        CHECK(rows[0][1] == rows[255][1]);
        CHECK(rows[0][1] != rows[256][1]);
        CHECK(rows[0][0] != rows[1][0]);
        bool found = false;
        for (const auto& r : rows)
            if (std::stod(r[0]) == 0.0 && std::stod(r[1]) == 0.0) {
                found = true;
                CHECK(std::abs(std::stod(r[2]) - 2.0) < 1e-12);
            }
        CHECK(found);
        CHECK(rows[256][1] == "-9.921875");
        CHECK(rows[1][0] == "-9.921875");
        CHECK(rows[100][2].find('e') != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "wigner-equivalence.transformed.csv"));
    }

    TEST_CASE("1D field CSV flags masked rows") {
        const fs::path dir = scratch("csv1d");
        CHECK(invoke({"run", "harmonic-coherent", "--fields", "quantum_potential,quantum_potential_p", "--out",
                      dir.string()})
                  .code == kOk);
        for (const auto& [file, axis] : {std::pair{"harmonic-coherent.quantum_potential.csv", "q"},
                                         std::pair{"harmonic-coherent.quantum_potential_p.csv", "p"}}) {
            std::ifstream in(dir / file);
            std::string line;
            std::getline(in, line);
            CHECK(line == std::string(axis) + ",value,masked");
            std::size_t rows = 0, masked = 0;
            while (std::getline(in, line)) {
                const auto cells = split(line);
                REQUIRE(cells.size() == 3);
                const double x = std::stod(cells[0]);
                if (cells[2] == "1") {
                    ++masked;
                    CHECK(std::stod(cells[1]) == 0.0);
                } else {
                    CHECK(cells[2] == "0");
                    CHECK(std::abs(std::stod(cells[1]) - (0.5 - 0.5 * x * x)) < 1e-8);
                }
                ++rows;
            }
            CHECK(rows == RunConfig{}.profile_grid_n);
            CHECK(masked > 0);
            CHECK(masked < rows);
        }
    }

    TEST_CASE("write_field_csv round-trips doubles") {
        const fs::path dir = scratch("roundtrip");
        fs::create_directories(dir);
        const epsqp::Grid1D g = epsqp::make_grid(8, 0.0, 1.0);
        const epsqp::RVec v{0.1, 1.0 / 3.0, -2e-300, 1e300, 0.0, 6.02214076e23, -0.7, 1.0 + 1e-15};
        write_field_csv(Field1D{g, v, epsqp::Mask(8, true), "q"}, (dir / "f.csv").string());
        std::ifstream in(dir / "f.csv");
        std::string line;
        std::getline(in, line);
        for (std::size_t i = 0; i < 8; ++i) {
            std::getline(in, line);
            CHECK(std::stod(split(line)[1]) == v[i]);
        }
        CHECK_THROWS_AS(write_field_csv(Field1D{g, v, epsqp::Mask(8, true), "q"}, "/proc/nope/f.csv"), epsqp::Error);
    }

    TEST_CASE("number and name lists") {
        CHECK(parse_number_list("-1, -0.5,0") == std::vector<double>{-1.0, -0.5, 0.0});
        CHECK(parse_name_list("a,b") == std::vector<std::string>{"a", "b"});
        CHECK_THROWS_AS(parse_name_list(""), UsageError);
        CHECK_THROWS_AS(parse_name_list("a,,b"), UsageError);
        CHECK_THROWS_AS(parse_number_list("1,2x"), UsageError);
    }
}
