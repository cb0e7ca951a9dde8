#pragma once

#include <optional>
#include <string>
#include <vector>

#include "partriemann/drag_laws.hpp"
#include "partriemann/euler_waves.hpp"
#include "partriemann/particle_germ.hpp"
#include "partriemann/wave_sets.hpp"

namespace partriemann {

/// Isothermal Euler flow with a point particle at x = v t exerting the drag
/// -D(rho, q - v rho) on the fluid.
struct ParticleRiemannProblem {
    FluidState left;
    FluidState right;
    double v;
    double c;
    DragLaw law;
};

void validate(const ParticleRiemannProblem& problem);

/// x -> -x image: data swapped and momenta negated, v negated, law reflected.
ParticleRiemannProblem reflect(const ParticleRiemannProblem& problem);

enum class CaseLabel { Subsonic, SupersonicLeft, SupersonicRight };

const char* to_string(CaseLabel label);

/// How the traces sit relative to the sonic line.
enum class TraceKind {
    Stationary,             ///< alpha = 0, equal traces
    Subsonic,               ///< both traces subsonic, continuous profile
    SupersonicContinuous,   ///< upstream datum kept, supersonic exit
    SupersonicJump,         ///< upstream datum kept, standing shock inside the particle
};

const char* to_string(TraceKind kind);

struct ParticleRiemannSolution {
    WaveFan left_fan;  ///< left datum -> minus trace, all speeds <= v
    FluidState minus_trace;
    FluidState plus_trace;
    WaveFan right_fan; ///< plus trace -> right datum, all speeds >= v
    double alpha_star;
    std::optional<double> theta;
    double v;
    CaseLabel case_label;
    TraceKind kind;
    GermCheck germ;
};

/// Closed inequalities: sonic data count as subsonic. When both data are
/// supersonic the right one wins iff it lies in the left supersonic region.
CaseLabel classify(const ParticleRiemannProblem& problem);

/// Sign-oriented potential drop across the particle at mass flux alpha;
/// germ traces on the subsonic graphs solve delta = 1.
double delta(double alpha, const AccessibleCurveMinus& minus, const AccessibleCurvePlus& plus,
             const DragLaw& law, double c);

/// Unique solution in the subsonic case.
ParticleRiemannSolution solve_subsonic(const ParticleRiemannProblem& problem);

/// Decision tree for a supersonic left datum whose right datum is not in the
/// left supersonic region.
ParticleRiemannSolution solve_supersonic_left(const ParticleRiemannProblem& problem);

/// Dispatches on classify(); returns the solution the decision tree selects.
ParticleRiemannSolution solve(const ParticleRiemannProblem& problem);

/// Every solution found by scanning delta = 1 on both signs of alpha and the
/// supersonic branches, verified and deduplicated, sorted by alpha*.
std::vector<ParticleRiemannSolution> enumerate_solutions(const ParticleRiemannProblem& problem);

struct SolutionCheck {
    bool germ_member = false;
    bool minus_in_V = false;
    bool plus_in_V = false;
    bool left_fan_slower = false;  ///< every left wave no faster than v
    bool right_fan_faster = false; ///< every right wave no slower than v
    double germ_relation = 0.0;

    bool ok() const {
        return germ_member && minus_in_V && plus_in_V && left_fan_slower && right_fan_faster;
    }
};

SolutionCheck check_solution(const ParticleRiemannProblem& problem,
                             const ParticleRiemannSolution& solution);

/// State at (t, x). At x = v t the plus trace is returned.
FluidState sample_solution(const ParticleRiemannSolution& solution, double t, double x);

struct SweepRow {
    double lambda;
    std::optional<ParticleRiemannSolution> solution;
    std::string error; ///< empty on success
};

/// One solve per drag coefficient of the template's power law, run
/// concurrently. Failures are recorded per row.
std::vector<SweepRow> sweep_coefficient(const ParticleRiemannProblem& problem,
                                        const std::vector<double>& lambdas);

} // namespace partriemann
