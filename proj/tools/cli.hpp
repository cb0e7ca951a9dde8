#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "partriemann/drag_laws.hpp"
#include "partriemann/particle_germ.hpp"
#include "partriemann/riemann_solver.hpp"

namespace partriemann::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidConfig = 2,
    kNoSolution = 3,
    kHypothesisViolation = 4,
};

struct SideConfig {
    double rho = 0.0;
    std::optional<double> u;
    std::optional<double> q;
};

struct Sampling {
    double t = 1.0;
    double x_min = -1.0;
    double x_max = 1.0;
    int points = 201;
};

struct ProfileConfig {
    ParticleState entry{1.0, 1.0};
    double epsilon = 1.0;
    Regularizer regularizer = Regularizer::Smoothstep;
    std::optional<double> theta;
};

struct RunConfig {
    double c = 1.0;
    double v = 0.0;
    SideConfig left;
    SideConfig right;
    PowerLawParams drag{1.0, 1.0, 1.0};
    std::string mode = "solve";
    Sampling sampling;
    std::vector<double> lambdas;
    ProfileConfig profile;
    bool strict = false;
};

/// Raised for malformed documents; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_config(const nlohmann::json& doc);

enum class Severity { Error, Advisory };

struct Violation {
    Severity severity;
    std::string message;
};

/// Structural problems (errors) and unmet drag-law hypotheses (advisories).
std::vector<Violation> validate(const RunConfig& config);

ParticleRiemannProblem to_problem(const RunConfig& config);

/// Canonical config document with momenta; feeding it back reproduces the run.
nlohmann::json echo(const RunConfig& config);

/// Runs the configured mode, writing report.json and the mode's CSV files
/// into `out`. Returns the process exit code.
int run(const RunConfig& config, const std::filesystem::path& out);

/// Command-line entry point.
int main(int argc, char** argv);

} // namespace partriemann::cli
