#pragma once

#include <optional>

#include "partriemann/euler_waves.hpp"
#include "partriemann/particle_germ.hpp"

namespace partriemann {

/// States reachable on the left of a particle moving at speed v from the
/// left datum by waves slower than v, in the (rho, alpha) plane:
/// the datum, the subsonic graph of f_sub and the open supersonic region
/// below f_sup.
class AccessibleCurveMinus {
public:
    AccessibleCurveMinus(const FluidState& left, double v, double c);

    const ParticleState& datum() const { return datum_; }
    double v() const { return v_; }
    double c() const { return c_; }

    /// Lower end of the 1-wave curve.
    double rho_ex() const { return rho_ex_; }
    /// Density where the 1-wave curve meets alpha = -c rho.
    double rho_sonic() const { return rho_sonic_; }
    /// Density where the 1-wave curve meets alpha = 0.
    double rho_zero() const { return rho_zero_; }
    /// Largest alpha on the subsonic graph, f(rho_ex).
    double alpha_max() const { return alpha_max_; }

    /// States behind a single 1-wave no faster than v. Requires rho >= rho_ex.
    double f(double rho) const;
    /// Subsonic boundary; empty below rho_ex.
    std::optional<double> f_sub(double rho) const;
    /// Upper boundary of the supersonic region.
    double f_sup(double rho) const;

    /// Inverse of f_sub for alpha <= alpha_max; throws InvalidArgument above.
    double g_sub(double alpha) const;
    /// Inverse of f_sup for alpha < 0; the mirror of g_sub(alpha).
    double g_sup(double alpha) const;

    /// Datum, subsonic graph (to 1e-10), or strictly below f_sup.
    bool contains(const ParticleState& state) const;

private:
    ParticleState datum_;
    double v_;
    double c_;
    double rho_ex_;
    double rho_sonic_;
    double rho_zero_;
    double alpha_max_;
};

/// Mirror image of AccessibleCurveMinus for the right datum: states reached
/// by waves faster than v, the subsonic graph of an increasing f_sub and
/// the open region above f_sup. Built by reflecting x -> -x.
class AccessibleCurvePlus {
public:
    AccessibleCurvePlus(const FluidState& right, double v, double c);

    const ParticleState& datum() const { return datum_; }
    double v() const { return -image_.v(); }
    double c() const { return image_.c(); }

    double rho_ex() const { return image_.rho_ex(); }
    /// Density where the 2-wave curve meets alpha = c rho.
    double rho_sonic() const { return image_.rho_sonic(); }
    double rho_zero() const { return image_.rho_zero(); }
    /// Smallest alpha on the subsonic graph, f(rho_ex).
    double alpha_min() const { return -image_.alpha_max(); }

    double f(double rho) const { return -image_.f(rho); }
    std::optional<double> f_sub(double rho) const;
    double f_sup(double rho) const { return -image_.f_sup(rho); }
    double g_sub(double alpha) const { return image_.g_sub(-alpha); }
    /// Defined for alpha > 0.
    double g_sup(double alpha) const { return image_.g_sup(-alpha); }

    bool contains(const ParticleState& state) const;

private:
    ParticleState datum_;
    AccessibleCurveMinus image_;
};

AccessibleCurveMinus build_minus(const FluidState& left, double v, double c);
AccessibleCurvePlus build_plus(const FluidState& right, double v, double c);

bool in_V(const AccessibleCurveMinus& curve, const ParticleState& state);
bool in_V(const AccessibleCurvePlus& curve, const ParticleState& state);

struct Crossing {
    double alpha0;
    double rho0; ///< common value of both g_sub at alpha0
};

/// alpha0 with g_minus_sub(alpha0) = g_plus_sub(alpha0); empty when the
/// subsonic ranges do not overlap or the difference does not change sign.
std::optional<Crossing> crossing_alpha(const AccessibleCurveMinus& minus,
                                       const AccessibleCurvePlus& plus);

} // namespace partriemann
