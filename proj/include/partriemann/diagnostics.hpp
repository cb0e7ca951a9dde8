#pragma once

#include "partriemann/euler_waves.hpp"
#include "partriemann/particle_germ.hpp"
#include "partriemann/riemann_solver.hpp"

namespace partriemann {

/// Mathematical entropy q^2 / (2 rho) + c^2 rho ln rho.
double entropy(const FluidState& state, double c);
/// Its flux u (E + c^2 rho).
double entropy_flux(const FluidState& state, double c);

/// Particle acceleration driven by the traces,
/// c^2 (rho_- - rho_+)(1 - (u_- - v)(u_+ - v) / c^2) / mass.
/// Throws InvalidArgument when the relative momenta differ by more than 1e-10.
double particle_acceleration(const FluidState& minus, const FluidState& plus, double v, double c,
                             double mass = 1.0);

/// Same quantity from the jump of the momentum flux across x = v t.
double momentum_flux_jump(const FluidState& minus, const FluidState& plus, double v, double c,
                          double mass = 1.0);

/// Entropy produced at the interface, alpha [alpha^2 (1/rho_+^2 - 1/rho_-^2) / 2
/// + c^2 ln(rho_+ / rho_-)]; nonpositive for admissible pairs.
double interface_dissipation(const GermPair& pair, double c);

struct DiagnosticsReport {
    bool shocks_admissible = true;   ///< u upstream > u downstream for every shock
    bool rarefactions_ordered = true;
    bool fans_ordered = true;        ///< left fan <= v <= right fan
    bool germ_member = false;
    double germ_relation = 0.0;
    double dissipation = 0.0;
    double acceleration = 0.0;
    double momentum_residual = 0.0;  ///< acceleration vs flux-jump form, relative
    bool mirror_bound = true;        ///< exit below the mirror of a supersonic entry

    bool passed() const;
};

inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kDissipationTolerance = 1e-12;

DiagnosticsReport diagnose(const ParticleRiemannProblem& problem,
                           const ParticleRiemannSolution& solution, double mass = 1.0);

} // namespace partriemann
