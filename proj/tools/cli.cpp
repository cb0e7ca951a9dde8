#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "partriemann/diagnostics.hpp"
#include "partriemann/errors.hpp"
#include "partriemann/wave_sets.hpp"

namespace partriemann::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kModes{"solve", "enumerate", "sweep", "profile", "curves"};

double number(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    if (!obj[key].is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return obj[key].get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    return number(obj, key);
}

const json& object(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_object()) {
        throw ConfigError(std::string("missing object '") + key + "'");
    }
    return obj[key];
}

SideConfig parse_side(const json& obj) {
    SideConfig side;
    side.rho = number(obj, "rho");
    side.u = optional_number(obj, "u");
    side.q = optional_number(obj, "q");
    return side;
}

FluidState to_state(const SideConfig& side) {
    if (side.q) return {side.rho, *side.q};
    return FluidState::from_velocity(side.rho, side.u.value_or(0.0));
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

json state_json(const FluidState& s) { return {{"rho", s.rho}, {"q", s.q}, {"u", s.u()}}; }

json hypotheses_json(const HypothesisReport& h) {
    return {{"sign_ok", h.sign_ok},
            {"increasing_in_alpha", h.increasing_in_alpha},
            {"abs_decreasing_in_rho", h.abs_decreasing_in_rho},
            {"croissance_ok", h.croissance_ok}};
}

json solution_json(const ParticleRiemannProblem& p, const ParticleRiemannSolution& s) {
    const auto check = check_solution(p, s);
    const auto diag = diagnose(p, s);
    json out{{"kind", to_string(s.kind)},
             {"alpha_star", s.alpha_star},
             {"theta", s.theta ? json(*s.theta) : json(nullptr)},
             {"minus_trace", state_json(s.minus_trace)},
             {"plus_trace", state_json(s.plus_trace)},
             {"germ_residual", s.germ.relation},
             {"checks",
              {{"germ_member", check.germ_member},
               {"minus_in_V", check.minus_in_V},
               {"plus_in_V", check.plus_in_V},
               {"left_fan_slower", check.left_fan_slower},
               {"right_fan_faster", check.right_fan_faster}}},
             {"diagnostics",
              {{"passed", diag.passed()},
               {"shocks_admissible", diag.shocks_admissible},
               {"rarefactions_ordered", diag.rarefactions_ordered},
               {"fans_ordered", diag.fans_ordered},
               {"dissipation", diag.dissipation},
               {"acceleration", diag.acceleration},
               {"momentum_residual", diag.momentum_residual},
               {"mirror_bound", diag.mirror_bound}}}};
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::string solution_csv(const RunConfig& cfg, const ParticleRiemannSolution& s) {
    std::ostringstream out;
    out << "x,rho,u,q,alpha\n";
    const auto& g = cfg.sampling;
    for (int i = 0; i < g.points; ++i) {
        const double x = g.x_min + (g.x_max - g.x_min) * i / (g.points - 1);
        const auto st = sample_solution(s, g.t, x);
        out << fmt(x) << ',' << fmt(st.rho) << ',' << fmt(st.u()) << ',' << fmt(st.q) << ','
            << fmt(st.q - cfg.v * st.rho) << '\n';
    }
    return out.str();
}

std::string curves_csv(const RunConfig& cfg, const ParticleRiemannProblem& p) {
    const auto minus = build_minus(p.left, p.v, p.c);
    const auto plus = build_plus(p.right, p.v, p.c);
    const double lo = 0.1 * std::min({p.left.rho, p.right.rho, minus.rho_ex(), plus.rho_ex()});
    const double hi = 10.0 * std::max({p.left.rho, p.right.rho, minus.rho_zero(), plus.rho_zero()});
    std::ostringstream out;
    out << "rho,f_minus_sub,f_minus_sup,f_plus_sub,f_plus_sup\n";
    const int n = cfg.sampling.points;
    for (int i = 0; i < n; ++i) {
        const double rho = lo * std::pow(hi / lo, double(i) / (n - 1));
        out << fmt(rho) << ',' << fmt(minus.f_sub(rho)) << ',' << fmt(minus.f_sup(rho)) << ','
            << fmt(plus.f_sub(rho)) << ',' << fmt(plus.f_sup(rho)) << '\n';
    }
    return out.str();
}

json error_json(const std::string& error, const json& detail) {
    return {{"error", error}, {"detail", detail}};
}

int fail(const fs::path& out, int code, const std::string& error, const json& detail) {
    const auto doc = error_json(error, detail);
    std::cerr << doc.dump() << '\n';
    std::error_code ec;
    fs::create_directories(out, ec);
    if (!ec) {
        try {
            write_json(out / "error.json", doc);
        } catch (const std::exception&) {
        }
    }
    return code;
}

} // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;
    cfg.c = number(doc, "c");
    cfg.v = optional_number(doc, "v").value_or(0.0);
    cfg.left = parse_side(object(doc, "left"));
    cfg.right = parse_side(object(doc, "right"));

    const auto& drag = object(doc, "drag");
    const std::string type = drag.value("type", std::string("power"));
    if (type != "power") throw ConfigError("drag.type must be \"power\"");
    cfg.drag = {number(drag, "lambda"), number(drag, "n"), number(drag, "m")};

    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) throw ConfigError("mode must be a string");
        cfg.mode = doc["mode"].get<std::string>();
    }
    if (doc.contains("sampling")) {
        const auto& s = object(doc, "sampling");
        cfg.sampling.t = optional_number(s, "t").value_or(cfg.sampling.t);
        cfg.sampling.x_min = optional_number(s, "x_min").value_or(cfg.sampling.x_min);
        cfg.sampling.x_max = optional_number(s, "x_max").value_or(cfg.sampling.x_max);
        if (s.contains("points")) {
            if (!s["points"].is_number_integer()) throw ConfigError("sampling.points must be an integer");
            cfg.sampling.points = s["points"].get<int>();
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = object(doc, "sweep");
        if (!s.contains("lambdas") || !s["lambdas"].is_array()) {
            throw ConfigError("sweep.lambdas must be a list");
        }
        for (const auto& x : s["lambdas"]) {
            if (!x.is_number()) throw ConfigError("sweep.lambdas entries must be numbers");
            cfg.lambdas.push_back(x.get<double>());
        }
    }
    if (doc.contains("profile")) {
        const auto& s = object(doc, "profile");
        const auto& entry = object(s, "entry");
        cfg.profile.entry = {number(entry, "rho"), number(entry, "alpha")};
        cfg.profile.epsilon = optional_number(s, "epsilon").value_or(1.0);
        const std::string reg = s.value("regularizer", std::string("smoothstep"));
        if (reg == "ramp") {
            cfg.profile.regularizer = Regularizer::Ramp;
        } else if (reg == "smoothstep") {
            cfg.profile.regularizer = Regularizer::Smoothstep;
        } else {
            throw ConfigError("profile.regularizer must be \"ramp\" or \"smoothstep\"");
        }
        cfg.profile.theta = optional_number(s, "theta");
    }
    if (doc.contains("strict")) {
        if (!doc["strict"].is_boolean()) throw ConfigError("strict must be a boolean");
        cfg.strict = doc["strict"].get<bool>();
    }
    return cfg;
}

std::vector<Violation> validate(const RunConfig& cfg) {
    std::vector<Violation> out;
    auto error = [&](std::string m) { out.push_back({Severity::Error, std::move(m)}); };
    auto finite = [](double x) { return std::isfinite(x); };

    if (!(cfg.c > 0.0) || !finite(cfg.c)) error("c must be positive");
    if (!finite(cfg.v)) error("v must be finite");
    for (const auto* side : {&cfg.left, &cfg.right}) {
        const char* name = side == &cfg.left ? "left" : "right";
        if (!(side->rho > 0.0) || !finite(side->rho)) error(std::string(name) + ": rho must be positive");
        if (side->u && side->q) error(std::string(name) + ": overdetermined state");
        if (!side->u && !side->q) error(std::string(name) + ": underdetermined state");
        if ((side->u && !finite(*side->u)) || (side->q && !finite(*side->q))) {
            error(std::string(name) + ": velocity must be finite");
        }
    }
    if (!(cfg.drag.lambda > 0.0) || !finite(cfg.drag.lambda)) error("drag.lambda must be positive");
    if (!finite(cfg.drag.n) || !finite(cfg.drag.m)) error("drag exponents must be finite");
    if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end()) {
        error("unknown mode '" + cfg.mode + "'");
    }
    if (cfg.sampling.points < 2) error("sampling.points must be at least 2");
    if (!(cfg.sampling.t > 0.0)) error("sampling.t must be positive");
    if (!(cfg.sampling.x_max > cfg.sampling.x_min)) error("sampling.x_max must exceed x_min");
    if (cfg.mode == "sweep") {
        if (cfg.lambdas.empty()) error("sweep.lambdas must be nonempty");
        for (double l : cfg.lambdas) {
            if (!(l > 0.0) || !finite(l)) error("sweep.lambdas entries must be positive");
        }
    }
    if (cfg.mode == "profile") {
        const auto& pr = cfg.profile;
        if (!(pr.entry.rho > 0.0)) error("profile.entry.rho must be positive");
        if (pr.entry.alpha == 0.0 || !finite(pr.entry.alpha)) error("profile.entry.alpha must be nonzero");
        if (!(pr.epsilon > 0.0)) error("profile.epsilon must be positive");
        if (pr.theta && !(*pr.theta >= 0.0 && *pr.theta <= 1.0)) error("profile.theta must lie in [0, 1]");
    }

    const bool structural_ok = out.empty();
    if (cfg.drag.m < 1.0 || cfg.drag.n < 0.0 || cfg.drag.m < cfg.drag.n) {
        out.push_back({Severity::Advisory,
                       "uniqueness hypotheses not satisfied (need m >= 1, n >= 0, m >= n); "
                       "enumeration may return 0-3 solutions"});
    }
    if (structural_ok) {
        const auto h = check_hypotheses(DragLaw::power(cfg.drag.lambda, cfg.drag.n, cfg.drag.m),
                                        HypothesisGrid{.c = cfg.c});
        if (!h.sign_ok) out.push_back({Severity::Advisory, "drag does not have the sign of alpha"});
        if (!h.increasing_in_alpha) out.push_back({Severity::Advisory, "drag not increasing in alpha"});
        if (!h.abs_decreasing_in_rho) out.push_back({Severity::Advisory, "|drag| increasing in rho"});
        if (!h.croissance_ok) out.push_back({Severity::Advisory, "mirror inequality of the potential fails"});
    }
    return out;
}

ParticleRiemannProblem to_problem(const RunConfig& cfg) {
    return {to_state(cfg.left), to_state(cfg.right), cfg.v, cfg.c,
            DragLaw::power(cfg.drag.lambda, cfg.drag.n, cfg.drag.m)};
}

json echo(const RunConfig& cfg) {
    const auto p = to_problem(cfg);
    json doc{{"c", cfg.c},
             {"v", cfg.v},
             {"left", {{"rho", p.left.rho}, {"q", p.left.q}}},
             {"right", {{"rho", p.right.rho}, {"q", p.right.q}}},
             {"drag", {{"type", "power"}, {"lambda", cfg.drag.lambda}, {"n", cfg.drag.n}, {"m", cfg.drag.m}}},
             {"mode", cfg.mode},
             {"sampling",
              {{"t", cfg.sampling.t},
               {"x_min", cfg.sampling.x_min},
               {"x_max", cfg.sampling.x_max},
               {"points", cfg.sampling.points}}},
             {"strict", cfg.strict}};
    if (!cfg.lambdas.empty()) doc["sweep"] = {{"lambdas", cfg.lambdas}};
    if (cfg.mode == "profile") {
        const auto& pr = cfg.profile;
        doc["profile"] = {{"entry", {{"rho", pr.entry.rho}, {"alpha", pr.entry.alpha}}},
                          {"epsilon", pr.epsilon},
                          {"regularizer", pr.regularizer == Regularizer::Ramp ? "ramp" : "smoothstep"}};
        if (pr.theta) doc["profile"]["theta"] = *pr.theta;
    }
    return doc;
}

int run(const RunConfig& cfg, const fs::path& out) {
    const auto violations = validate(cfg);
    json errors = json::array();
    json advisories = json::array();
    for (const auto& v : violations) {
        (v.severity == Severity::Error ? errors : advisories).push_back(v.message);
    }
    if (!errors.empty()) return fail(out, kInvalidConfig, "invalid config", errors);
    if (cfg.strict && !advisories.empty()) {
        return fail(out, kHypothesisViolation, "drag-law hypotheses violated", advisories);
    }

    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) return fail(out, kInvalidConfig, "cannot create output directory", out.string());

    const auto p = to_problem(cfg);
    json report{{"config", echo(cfg)},
                {"mode", cfg.mode},
                {"case", to_string(classify(p))},
                {"hypotheses", hypotheses_json(check_hypotheses(p.law, HypothesisGrid{.c = p.c}))},
                {"advisories", advisories},
                {"sampling_convention", "x = v t returns the plus trace"},
                {"solutions", json::array()}};
    int code = kOk;

    try {
        if (cfg.mode == "solve") {
            const auto s = solve(p);
            report["solutions"].push_back(solution_json(p, s));
            write_text(out / "solution.csv", solution_csv(cfg, s));
        } else if (cfg.mode == "enumerate") {
            const auto all = enumerate_solutions(p);
            for (std::size_t k = 0; k < all.size(); ++k) {
                report["solutions"].push_back(solution_json(p, all[k]));
                write_text(out / ("solution_" + std::to_string(k) + ".csv"), solution_csv(cfg, all[k]));
            }
            if (all.empty()) code = kNoSolution;
        } else if (cfg.mode == "sweep") {
            const auto rows = sweep_coefficient(p, cfg.lambdas);
            std::ostringstream csv;
            csv << "lambda,alpha_star,rho_minus,rho_plus,residual\n";
            json table = json::array();
            bool any = false;
            for (const auto& row : rows) {
                if (row.solution) {
                    any = true;
                    const auto& s = *row.solution;
                    csv << fmt(row.lambda) << ',' << fmt(s.alpha_star) << ',' << fmt(s.minus_trace.rho)
                        << ',' << fmt(s.plus_trace.rho) << ',' << fmt(s.germ.relation) << '\n';
                    json entry = solution_json(p, s);
                    entry["lambda"] = row.lambda;
                    table.push_back(entry);
                } else {
                    csv << fmt(row.lambda) << ",,,,\n";
                    table.push_back({{"lambda", row.lambda}, {"error", row.error}});
                }
            }
            report["sweep"] = table;
            write_text(out / "sweep.csv", csv.str());
            if (!any) code = kNoSolution;
        } else if (cfg.mode == "profile") {
            const auto& pr = cfg.profile;
            const auto path = integrate_profile_path(pr.entry, p.law, p.c, pr.regularizer,
                                                     pr.epsilon, pr.theta);
            const SonicPotential f(p.law, pr.entry.alpha, p.c);
            std::ostringstream csv;
            csv << "xi,rho,u,F_value\n";
            for (const auto& s : path.samples) {
                csv << fmt(s.xi) << ',' << fmt(s.rho) << ',' << fmt(cfg.v + pr.entry.alpha / s.rho)
                    << ',' << fmt(f(s.rho)) << '\n';
            }
            write_text(out / "profile.csv", csv.str());
            json prof{{"entry", {{"rho", pr.entry.rho}, {"alpha", pr.entry.alpha}}},
                      {"pinched", nullptr}};
            if (path.pinched) {
                prof["pinched"] = {{"xi", path.pinched->xi}, {"rho", path.pinched->rho}};
                code = kNoSolution;
            } else if (!path.samples.empty()) {
                const auto& exit = pr.entry.alpha > 0 ? path.samples.back() : path.samples.front();
                prof["exit_rho"] = exit.rho;
            }
            report["profile"] = prof;
        } else if (cfg.mode == "curves") {
            write_text(out / "curves.csv", curves_csv(cfg, p));
        }
    } catch (const NoRootError& e) {
        report["error"] = error_json("no solution found", e.what());
        write_json(out / "report.json", report);
        return fail(out, kNoSolution, "no solution found", e.what());
    } catch (const InvalidArgument& e) {
        return fail(out, kInvalidConfig, "invalid config", e.what());
    }
    write_json(out / "report.json", report);
    return code;
}

int main(int argc, char** argv) {
    CLI::App app{"Riemann problems for isothermal Euler flow with a moving drag particle"};
    std::string config_path;
    std::string out_dir = "./out";
    std::string mode;
    bool strict = false;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--mode", mode, "solve|enumerate|sweep|profile|curves (overrides config)");
    app.add_flag("--strict", strict, "fail when the drag law violates the uniqueness hypotheses");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(out_dir, kInvalidConfig, "invalid arguments", e.what());
    }

    std::ifstream in(config_path);
    if (!in) return fail(out_dir, kInvalidConfig, "cannot read config", config_path);
    RunConfig cfg;
    try {
        cfg = parse_config(json::parse(in));
    } catch (const json::exception& e) {
        return fail(out_dir, kInvalidConfig, "invalid config", e.what());
    } catch (const ConfigError& e) {
        return fail(out_dir, kInvalidConfig, "invalid config", e.what());
    }
    if (!mode.empty()) cfg.mode = mode;
    if (strict) cfg.strict = true;
    try {
        return run(cfg, out_dir);
    } catch (const std::exception& e) {
        return fail(out_dir, kNoSolution, "run failed", e.what());
    }
}

} // namespace partriemann::cli
