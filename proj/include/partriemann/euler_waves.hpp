#pragma once

#include <optional>
#include <utility>
#include <variant>

namespace partriemann {

/// Lab-frame fluid state of the isothermal Euler system.
struct FluidState {
    double rho; ///< density, strictly positive
    double q;   ///< momentum rho * u

    double u() const { return q / rho; }

    static FluidState from_velocity(double rho, double u) { return {rho, rho * u}; }
};

/// Throws InvalidArgument unless rho > 0 and both fields are finite.
void validate(const FluidState& state);

enum class Family { One = 1, Two = 2 };

/// Discontinuity of the given family. `upstream` is the state at the
/// smaller x (left of the shock), `downstream` the one at larger x.
struct Shock {
    Family family;
    double speed;
    FluidState upstream;
    FluidState downstream;
};

/// Centred rarefaction fan; head_speed <= tail_speed.
struct Rarefaction {
    Family family;
    double head_speed;
    double tail_speed;
    FluidState upstream;
    FluidState downstream;
};

using Wave = std::variant<Shock, Rarefaction>;

Family family_of(const Wave& wave);
double slowest_speed(const Wave& wave);
double fastest_speed(const Wave& wave);

/// Self-similar solution of a classical Riemann problem: an optional
/// 1-wave, the middle state, an optional 2-wave.
struct WaveFan {
    FluidState left;
    std::optional<Wave> wave1;
    FluidState middle;
    std::optional<Wave> wave2;
    FluidState right;
    double c;
};

/// Characteristic speeds (u - c, u + c).
std::pair<double, double> eigenvalues(const FluidState& state, double c);

struct ShockConnection {
    FluidState state;
    double speed;
    bool entropic; ///< u_from >= u_to
};

/// Hugoniot locus of `family` through `from`, which is taken as the state on
/// the left of the discontinuity.
ShockConnection shock_connect(const FluidState& from, Family family,
                              double rho_to, double c);

/// State at characteristic speed `s` inside a rarefaction of `family` whose
/// left state is `from`. Requires s >= u_from -/+ c.
FluidState rarefaction_connect(const FluidState& from, Family family, double s,
                               double c);

/// Unique entropy solution of the isothermal Riemann problem.
WaveFan solve_classical_riemann(const FluidState& left, const FluidState& right,
                                double c);

/// Evaluates the fan at xi = x / t. A query exactly on a shock returns the
/// downstream state.
FluidState sample_fan(const WaveFan& fan, double xi);

/// Velocity on the forward 1-wave curve (left datum rho_k, u_k) or the
/// backward 2-wave curve (right datum) at density rho.
double wave_curve_velocity(Family family, const FluidState& datum, double rho,
                           double c);

} // namespace partriemann
