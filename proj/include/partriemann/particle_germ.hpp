#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "partriemann/drag_laws.hpp"
#include "partriemann/euler_waves.hpp"

namespace partriemann {

/// State seen from the particle: density and relative momentum
/// alpha = q - v rho, the mass flux through the particle.
struct ParticleState {
    double rho;
    double alpha;

    /// c rho >= |alpha|.
    bool subsonic(double c) const;
};

ParticleState to_particle(const FluidState& state, double v);
FluidState to_fluid(const ParticleState& state, double v);

/// Left (minus) and right (plus) traces of the particle moving at speed v.
struct GermPair {
    ParticleState minus;
    ParticleState plus;
    double v;
    std::optional<double> theta; ///< position of an internal standing shock
};

/// x -> -x.
ParticleState reflect(const ParticleState& state);
GermPair reflect(const GermPair& pair);

/// Exit density of a traversal from supersonic entry (alpha > 0) with a
/// standing shock placed after a fraction theta of the unit drop of F.
/// Empty when the drop budget runs out on either side of the shock.
std::optional<double> exit_for_theta(const ParticleState& entry, double theta,
                                     const DragLaw& law, double c);

namespace traversal {

struct Identity {
    ParticleState exit;
};

struct UniqueSubsonic {
    ParticleState exit;
};

/// Exits reachable from a supersonic entry. Exit densities from the jump
/// family are sampled on a uniform theta grid; jump_min / jump_max bound
/// the attained set, which need not be an interval.
struct SupersonicFamily {
    std::optional<ParticleState> continuous_exit;
    std::optional<double> jump_min;
    std::optional<double> jump_max;
    std::optional<double> exit_theta0; ///< shock at the particle's upstream edge
    std::optional<double> exit_theta1; ///< shock at the downstream edge
    std::vector<std::pair<double, double>> samples; ///< feasible (theta, exit density)
};

struct NoTraversal {};

} // namespace traversal

using TraversalOutcome =
    std::variant<traversal::Identity, traversal::UniqueSubsonic, traversal::SupersonicFamily,
                 traversal::NoTraversal>;

inline constexpr int kThetaGridPoints = 257;

/// All exit states of a flow entering the particle in `entry`. For
/// alpha > 0 the entry is the left trace, for alpha < 0 the right one;
/// exits are returned in the same orientation.
TraversalOutcome traverse(const ParticleState& entry, const DragLaw& law, double c);

enum class GermCase { Identity, Continuous, Jump, NotInGerm };

struct GermCheck {
    double alpha_mismatch = 0.0; ///< |alpha_minus - alpha_plus|
    double relation = 0.0;       ///< residual of the matched F relation
    GermCase matched = GermCase::NotInGerm;
    std::optional<double> theta; ///< theta used or recovered for a jump pair
    bool member = false;
};

inline constexpr double kGermTolerance = 1e-8;

/// Residuals of the germ relations for `pair`; member when every residual
/// is within `tolerance` and the side conditions hold.
GermCheck germ_residual(const GermPair& pair, const DragLaw& law, double c,
                        double tolerance = kGermTolerance);

enum class Regularizer { Ramp, Smoothstep };

struct ProfilePinched {
    double xi;  ///< position where the profile reached the sonic density
    double rho; ///< last density before the sonic point
};

struct ProfileSample {
    double xi;
    double rho;
};

struct ProfilePath {
    std::vector<ProfileSample> samples;
    std::optional<ProfilePinched> pinched;
};

inline constexpr int kProfileSteps = 10000;

/// Integrates the thickened-particle profile rho' = -D H' / (c^2 - alpha^2 /
/// rho^2) over [-eps/2, eps/2] with classical RK4. A theta inserts a jump
/// rho -> mirror(rho) where H = theta. Works in the flow direction, so the
/// entry is upstream as in `traverse`.
std::variant<ParticleState, ProfilePinched>
integrate_profile(const ParticleState& entry, const DragLaw& law, double c,
                  Regularizer regularizer, double epsilon,
                  std::optional<double> theta = std::nullopt, int steps = kProfileSteps);

/// Same integration, recording every `stride`-th point in the lab order
/// (increasing xi).
ProfilePath integrate_profile_path(const ParticleState& entry, const DragLaw& law, double c,
                                   Regularizer regularizer, double epsilon,
                                   std::optional<double> theta = std::nullopt,
                                   int steps = kProfileSteps, int stride = 100);

} // namespace partriemann
