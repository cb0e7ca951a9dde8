#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace partriemann;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "partriemann_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

json section4_doc() {
    return json::parse(R"({
        "c": 2, "v": 0,
        "left": {"rho": 1, "q": 5}, "right": {"rho": 5, "q": 9},
        "drag": {"type": "power", "lambda": 0.9, "n": 2, "m": 1},
        "mode": "enumerate",
        "sampling": {"t": 1, "x_min": -10, "x_max": 10, "points": 21}
    })");
}

json linear_doc() {
    return json::parse(R"({
        "c": 1, "v": 0.3,
        "left": {"rho": 1, "u": 1}, "right": {"rho": 2, "u": 0.25},
        "drag": {"type": "power", "lambda": 1, "n": 1, "m": 1},
        "mode": "solve",
        "sampling": {"t": 2, "x_min": -5, "x_max": 5, "points": 101}
    })");
}

int run_doc(const json& doc, const fs::path& out) { return cli::run(cli::parse_config(doc), out); }

bool has_message(const std::vector<cli::Violation>& v, cli::Severity sev, const std::string& text) {
    for (const auto& x : v) {
        if (x.severity == sev && x.message.find(text) != std::string::npos) return true;
    }
    return false;
}

} // namespace

TEST_CASE("equal states give a constant solution") {
    auto doc = linear_doc();
    doc["left"] = {{"rho", 1.5}, {"u", 0.3}};
    doc["right"] = {{"rho", 1.5}, {"u", 0.3}};
    const auto out = scratch("constant");
    REQUIRE(run_doc(doc, out) == cli::kOk);
    const auto rows = lines(slurp(out / "solution.csv"));
    REQUIRE(rows.size() == 102);
    CHECK(rows[0] == "x,rho,u,q,alpha");
    const auto tail = [](const std::string& r) { return r.substr(r.find(',')); };
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(tail(rows[i]) == tail(rows[1]));
}

TEST_CASE("three solutions and the strict flag") {
    const auto out = scratch("section4");
    REQUIRE(run_doc(section4_doc(), out) == cli::kOk);
    const auto report = json::parse(slurp(out / "report.json"));
    CHECK(report["case"] == "supersonic_left");
    REQUIRE(report["solutions"].size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(fs::exists(out / ("solution_" + std::to_string(k) + ".csv")));
        const auto& s = report["solutions"][k];
        CHECK(s["germ_residual"].get<double>() <= 1e-8);
        CHECK(s["diagnostics"]["passed"].get<bool>());
    }
    CHECK_FALSE(report["hypotheses"]["abs_decreasing_in_rho"].get<bool>());
    CHECK_FALSE(report["hypotheses"]["croissance_ok"].get<bool>());

    auto strict = section4_doc();
    strict["strict"] = true;
    const auto out4 = scratch("section4_strict");
    CHECK(run_doc(strict, out4) == cli::kHypothesisViolation);
    const auto err = json::parse(slurp(out4 / "error.json"));
    CHECK(err.contains("error"));
    CHECK(err.contains("detail"));
}

TEST_CASE("invalid configs") {
    auto doc = linear_doc();
    doc["left"]["rho"] = 0.0;
    const auto out = scratch("bad_rho");
    CHECK(run_doc(doc, out) == cli::kInvalidConfig);
    CHECK(json::parse(slurp(out / "error.json"))["error"] == "invalid config");

    auto missing = linear_doc();
    missing.erase("drag");
    CHECK_THROWS_AS(cli::parse_config(missing), cli::ConfigError);

    auto wrong_type = linear_doc();
    wrong_type["drag"]["type"] = "quadratic";
    CHECK_THROWS_AS(cli::parse_config(wrong_type), cli::ConfigError);

    auto few_points = linear_doc();
    few_points["sampling"]["points"] = 1;
    CHECK(run_doc(few_points, scratch("few_points")) == cli::kInvalidConfig);

    auto empty_sweep = linear_doc();
    empty_sweep["mode"] = "sweep";
    CHECK(run_doc(empty_sweep, scratch("empty_sweep")) == cli::kInvalidConfig);
}

TEST_CASE("validate") {
    CHECK(cli::validate(cli::parse_config(linear_doc())).empty());

    auto both = linear_doc();
    both["left"]["q"] = 1.0;
    CHECK(has_message(cli::validate(cli::parse_config(both)), cli::Severity::Error,
                      "overdetermined state"));

    auto neither = linear_doc();
    neither["right"].erase("u");
    CHECK(has_message(cli::validate(cli::parse_config(neither)), cli::Severity::Error,
                      "underdetermined state"));

    const auto adv = cli::validate(cli::parse_config(section4_doc()));
    CHECK(has_message(adv, cli::Severity::Advisory, "hypotheses not satisfied"));
    for (const auto& v : adv) CHECK(v.severity == cli::Severity::Advisory);
}

TEST_CASE("outputs are deterministic with LF endings") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    REQUIRE(run_doc(section4_doc(), a) == cli::kOk);
    REQUIRE(run_doc(section4_doc(), b) == cli::kOk);
    for (int k = 0; k < 3; ++k) {
        const auto name = "solution_" + std::to_string(k) + ".csv";
        const auto text = slurp(a / name);
        CHECK(text == slurp(b / name));
        CHECK(text.find('\r') == std::string::npos);
    }
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
}

TEST_CASE("report round-trips through the echoed config") {
    const auto out = scratch("echo_a");
    REQUIRE(run_doc(linear_doc(), out) == cli::kOk);
    const auto first = json::parse(slurp(out / "report.json"));
    const auto again = scratch("echo_b");
    REQUIRE(run_doc(first["config"], again) == cli::kOk);
    const auto second = json::parse(slurp(again / "report.json"));
    const auto& s1 = first["solutions"][0];
    const auto& s2 = second["solutions"][0];
    for (const char* trace : {"minus_trace", "plus_trace"}) {
        for (const char* key : {"rho", "q"}) {
            CHECK(s2[trace][key].get<double>() ==
                  doctest::Approx(s1[trace][key].get<double>()).epsilon(1e-12));
        }
    }
    CHECK(s2["alpha_star"].get<double>() == doctest::Approx(s1["alpha_star"].get<double>()).epsilon(1e-12));
}

TEST_CASE("solution.csv samples the assembled solution") {
    const auto out = scratch("sampled");
    REQUIRE(run_doc(linear_doc(), out) == cli::kOk);
    const auto rows = lines(slurp(out / "solution.csv"));
    REQUIRE(rows.size() == 102);
    // first row: far left datum
    CHECK(rows[1] == "-5,1,1,1,0.69999999999999996");
    // last row: far right datum (u = 0.25)
    CHECK(rows.back() == "5,2,0.25,0.5,-0.099999999999999978");
}

TEST_CASE("sweep mode") {
    auto doc = linear_doc();
    doc["mode"] = "sweep";
    doc["sweep"] = {{"lambdas", {1e-6, 1.0, 100.0}}};
    const auto out = scratch("sweep");
    REQUIRE(run_doc(doc, out) == cli::kOk);
    const auto rows = lines(slurp(out / "sweep.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "lambda,alpha_star,rho_minus,rho_plus,residual");
    CHECK(rows[1].rfind("9.9999999999999995e-07,", 0) == 0);
    const auto report = json::parse(slurp(out / "report.json"));
    CHECK(report["sweep"].size() == 3);
}

TEST_CASE("profile mode") {
    auto doc = linear_doc();
    doc["mode"] = "profile";
    doc["profile"] = {{"entry", {{"rho", 3.0}, {"alpha", 1.0}}}, {"epsilon", 1.0}, {"regularizer", "ramp"}};
    const auto out = scratch("profile");
    REQUIRE(run_doc(doc, out) == cli::kOk);
    const auto rows = lines(slurp(out / "profile.csv"));
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == "xi,rho,u,F_value");
    // the potential falls along the flow by one unit in total
    auto field = [](const std::string& r, int k) {
        std::istringstream in(r);
        std::string cell;
        for (int i = 0; i <= k; ++i) std::getline(in, cell, ',');
        return std::stod(cell);
    };
    double prev = field(rows[1], 3);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double f = field(rows[i], 3);
        CHECK(f <= prev + 1e-12);
        prev = f;
    }
    CHECK(field(rows[1], 3) - field(rows.back(), 3) == doctest::Approx(1.0).epsilon(1e-6));

    // entry too close to sonic: the profile pinches
    doc["profile"]["entry"] = {{"rho", 1.2}, {"alpha", 1.0}};
    CHECK(run_doc(doc, scratch("pinch")) == cli::kNoSolution);
}

TEST_CASE("curves mode") {
    auto doc = linear_doc();
    doc["mode"] = "curves";
    const auto out = scratch("curves");
    REQUIRE(run_doc(doc, out) == cli::kOk);
    const auto rows = lines(slurp(out / "curves.csv"));
    REQUIRE(rows.size() == 102);
    CHECK(rows[0] == "rho,f_minus_sub,f_minus_sup,f_plus_sub,f_plus_sup");
    // below both lower ends the subsonic columns are empty
    CHECK(rows[1].find(",,") != std::string::npos);
}

TEST_CASE("command line") {
    const auto dir = scratch("argv");
    const auto cfg = dir / "config.json";
    std::ofstream(cfg) << section4_doc().dump();
    const auto out = (dir / "out").string();

    auto call = [](std::vector<std::string> args) {
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        return cli::main(static_cast<int>(argv.size()), argv.data());
    };
    CHECK(call({"prog", "--config", cfg.string(), "--out", out}) == cli::kOk);
    CHECK(fs::exists(fs::path(out) / "report.json"));
    CHECK(call({"prog", "--config", cfg.string(), "--out", out, "--strict"}) == cli::kHypothesisViolation);
    CHECK(call({"prog", "--config", cfg.string(), "--out", out, "--mode", "curves"}) == cli::kOk);
    CHECK(fs::exists(fs::path(out) / "curves.csv"));
    CHECK(call({"prog", "--out", out}) == cli::kInvalidConfig);
    CHECK(call({"prog", "--config", (dir / "missing.json").string(), "--out", out}) == cli::kInvalidConfig);

    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(call({"prog", "--config", (dir / "broken.json").string(), "--out", out}) == cli::kInvalidConfig);
}
