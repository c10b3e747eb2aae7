#include <doctest.h>

#include "semistab_app/acceptance.hpp"
#include "semistab_app/analyze.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace semistab;
using app::Json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("semistab-test-" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SEMISTAB_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int analyze_quiet(const Json& config, const fs::path& out) {
    std::ostringstream o, e;
    return app::run_analyze(config, out, o, e);
}

Json small_matrix_config() {
    return Json::parse(R"({
        "scenario": {"kind": "matrix", "matrix": [[-1, 0], [0, [0, 1]]]},
        "grid": {"horizon": 50, "dt": 0.01},
        "seed": 3,
        "observations": [{"x": "random", "y": "random"}]
    })");
}

} // namespace

TEST_CASE("presets table names every scenario") {
    const auto table = app::list_presets();
    for (const char* name : {"cantor", "homoclinic", "torus-rotation", "foguel-demo", "cogenerator-demo",
                             "stable-matrix", "mean-ergodic-demo"}) {
        CHECK(table.find(name) != std::string::npos);
    }
    CHECK_THROWS_AS(app::preset_config("no-such-preset"), ValidationError);
}

TEST_CASE("analyze is deterministic for a fixed config and seed") {
    const auto a = scratch("det-a");
    const auto b = scratch("det-b");
    REQUIRE(analyze_quiet(small_matrix_config(), a) == 0);
    REQUIRE(analyze_quiet(small_matrix_config(), b) == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "signals" / "obs0.csv") == slurp(b / "signals" / "obs0.csv"));

    Json other = small_matrix_config();
    other["seed"] = 4;
    const auto c = scratch("det-c");
    REQUIRE(analyze_quiet(other, c) == 0);
    CHECK(slurp(a / "report.json") != slurp(c / "report.json"));
}

TEST_CASE("report layout") {
    const auto out = scratch("layout");
    REQUIRE(analyze_quiet(app::preset_config("stable-matrix"), out) == 0);
    const Json r = Json::parse(slurp(out / "report.json"));
    CHECK(r["schema_version"] == app::kSchemaVersion);
    CHECK(r["stability"]["verdict"] == "weak-stability-evidence");
    CHECK(r["stability"].contains("provenance"));
    for (const auto& [name, section] : r["analyses"].items()) {
        CAPTURE(name);
        CHECK(section.contains("provenance"));
    }
    const auto csv = slurp(out / "signals" / "obs0.csv");
    CHECK(csv.rfind("t,re,im,abs,running_mean\n", 0) == 0);
    CHECK(fs::exists(out / "plots" / "obs0.gp"));
}

TEST_CASE("preset verdicts") {
    struct Case {
        const char* preset;
        const char* verdict;
    };
    for (const auto& c : {Case{"rotation-matrix", "not-almost-weak"}, Case{"two-atom", "not-almost-weak"},
                          Case{"cantor", "almost-weak-only-evidence"}}) {
        CAPTURE(c.preset);
        const auto out = scratch(c.preset);
        REQUIRE(analyze_quiet(app::preset_config(c.preset), out) == 0);
        CHECK(Json::parse(slurp(out / "report.json"))["stability"]["verdict"] == c.verdict);
    }
}

TEST_CASE("validation errors map to exit code 2") {
    Json zero_dt = small_matrix_config();
    zero_dt["grid"]["dt"] = 0.0;
    CHECK(analyze_quiet(zero_dt, scratch("dt0")) == 2);

    Json negative_dt = small_matrix_config();
    negative_dt["grid"]["dt"] = -0.01;
    CHECK(analyze_quiet(negative_dt, scratch("dtneg")) == 2);

    Json rect = small_matrix_config();
    rect["scenario"]["matrix"] = Json::parse("[[1, 2, 3], [4, 5, 6]]");
    CHECK(analyze_quiet(rect, scratch("rect")) == 2);

    Json unknown = small_matrix_config();
    unknown["scenario"]["kind"] = "quantum";
    CHECK(analyze_quiet(unknown, scratch("unknown")) == 2);
}

TEST_CASE("command line front end") {
    const auto out = scratch("cli");
    CHECK(run_cli("presets") == 0);
    CHECK(run_cli("analyze --preset stable-matrix --horizon 40 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "report.json"));
    CHECK(Json::parse(slurp(out / "report.json"))["config"]["grid"]["horizon"] == 40.0);
    CHECK(run_cli("analyze --preset no-such-preset") == 2);
    CHECK(run_cli("analyze") == 2);
    CHECK(run_cli("check --suite medium") == 2);

    const auto cfg_path = scratch("cfg.json");
    Json bad = small_matrix_config();
    bad["grid"]["dt"] = 0.0;
    std::ofstream(cfg_path) << bad.dump();
    CHECK(run_cli("analyze --config " + cfg_path.string() + " --out " + scratch("cli-bad").string()) == 2);
    CHECK(run_cli("analyze --config /nonexistent/config.json") == 2);
}

TEST_CASE("acceptance runner reports measurements") {
    const auto r = app::run_criterion(9, app::Suite::fast);
    CHECK(r.passed);
    CHECK_FALSE(r.measurements.empty());
    std::ostringstream os;
    app::print_result(r, os);
    CHECK(os.str().rfind("[PASS] criterion 9", 0) == 0);
    CHECK_THROWS_AS(app::run_criterion(11, app::Suite::fast), ValidationError);
    CHECK_THROWS_AS(app::parse_suite("medium"), ValidationError);
}
