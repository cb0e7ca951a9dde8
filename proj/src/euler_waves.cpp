#include "partriemann/euler_waves.hpp"

#include <algorithm>
#include <cmath>

#include "partriemann/errors.hpp"
#include "partriemann/roots.hpp"

namespace partriemann {

namespace {

constexpr double kZeroStrength = 1e-13;

double family_sign(Family family) { return family == Family::One ? -1.0 : 1.0; }

void require_sound_speed(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw InvalidArgument("sound speed must be positive and finite");
    }
}

// log(rho / rho_k) as a function of y = (velocity drop) / c along a wave
// curve: shocks when y > 0, rarefactions otherwise.
double log_density_ratio(double y) {
    return y <= 0.0 ? y : 2.0 * std::asinh(0.5 * y);
}

double log_density_ratio_slope(double y) {
    return y <= 0.0 ? 1.0 : 1.0 / std::sqrt(1.0 + 0.25 * y * y);
}

} // namespace

void validate(const FluidState& state) {
    if (!(state.rho > 0.0) || !std::isfinite(state.rho)) {
        throw InvalidArgument("density must be positive and finite");
    }
    if (!std::isfinite(state.q)) {
        throw InvalidArgument("momentum must be finite");
    }
}

Family family_of(const Wave& wave) {
    return std::visit([](const auto& w) { return w.family; }, wave);
}

double slowest_speed(const Wave& wave) {
    if (const auto* s = std::get_if<Shock>(&wave)) return s->speed;
    return std::get<Rarefaction>(wave).head_speed;
}

double fastest_speed(const Wave& wave) {
    if (const auto* s = std::get_if<Shock>(&wave)) return s->speed;
    return std::get<Rarefaction>(wave).tail_speed;
}

std::pair<double, double> eigenvalues(const FluidState& state, double c) {
    validate(state);
    const double u = state.u();
    return {u - c, u + c};
}

ShockConnection shock_connect(const FluidState& from, Family family,
                              double rho_to, double c) {
    validate(from);
    require_sound_speed(c);
    if (!(rho_to > 0.0)) throw InvalidArgument("shock_connect: rho_to must be positive");
    const double speed =
        from.u() + family_sign(family) * c * std::sqrt(rho_to / from.rho);
    const FluidState to{rho_to, from.q + speed * (rho_to - from.rho)};
    return {to, speed, from.u() >= to.u()};
}

FluidState rarefaction_connect(const FluidState& from, Family family, double s,
                               double c) {
    validate(from);
    require_sound_speed(c);
    const double s_from = from.u() + family_sign(family) * c;
    const double ds = s - s_from;
    if (ds < -1e-12 * (std::abs(s_from) + c)) {
        throw InvalidArgument("rarefaction_connect: speed lies on the compressive side");
    }
    const double d = std::max(ds, 0.0);
    const double growth = std::exp(family_sign(family) * d / c);
    return {from.rho * growth, (from.q + from.rho * d) * growth};
}

double wave_curve_velocity(Family family, const FluidState& datum, double rho,
                           double c) {
    const double phi = rho > datum.rho
                           ? (rho - datum.rho) / std::sqrt(rho * datum.rho)
                           : std::log(rho / datum.rho);
    return family == Family::One ? datum.u() - c * phi : datum.u() + c * phi;
}

WaveFan solve_classical_riemann(const FluidState& left, const FluidState& right,
                                double c) {
    validate(left);
    validate(right);
    require_sound_speed(c);

    WaveFan fan{left, std::nullopt, left, std::nullopt, right, c};
    if (left.rho == right.rho && left.q == right.q) return fan;

    const double u_l = left.u();
    const double u_r = right.u();
    const double log_ratio = std::log(right.rho / left.rho);

    // ln(rho on 1-curve) - ln(rho on 2-curve), strictly decreasing in u*.
    auto mismatch = [&](double u) {
        return log_density_ratio((u_l - u) / c) - log_density_ratio((u - u_r) / c) -
               log_ratio;
    };
    const double width = 10.0 * c * (1.0 + std::abs(log_ratio));
    double lo = std::min(u_l, u_r) - width;
    double hi = std::max(u_l, u_r) + width;
    double u_star = roots::bisect(mismatch, lo, hi, 1e-13);

    // Newton polish; the bisection already sits within 1e-13 of the root.
    for (int it = 0; it < 3; ++it) {
        const double f = mismatch(u_star);
        const double df = -(log_density_ratio_slope((u_l - u_star) / c) +
                            log_density_ratio_slope((u_star - u_r) / c)) /
                          c;
        const double next = u_star - f / df;
        if (!std::isfinite(next) || std::abs(mismatch(next)) >= std::abs(f)) break;
        u_star = next;
    }

    const double rho_star = left.rho * std::exp(log_density_ratio((u_l - u_star) / c));
    FluidState middle{rho_star, rho_star * u_star};

    const bool has_wave1 = std::abs(rho_star - left.rho) > kZeroStrength * left.rho;
    const bool has_wave2 = std::abs(rho_star - right.rho) > kZeroStrength * right.rho;
    if (!has_wave1) middle = left;
    if (!has_wave2) middle = right;
    fan.middle = middle;

    if (has_wave1) {
        if (middle.rho > left.rho) {
            fan.wave1 = Shock{Family::One, u_l - c * std::sqrt(middle.rho / left.rho),
                              left, middle};
        } else {
            fan.wave1 = Rarefaction{Family::One, u_l - c, middle.u() - c, left, middle};
        }
    }
    if (has_wave2) {
        if (middle.rho > right.rho) {
            fan.wave2 = Shock{Family::Two,
                              middle.u() + c * std::sqrt(right.rho / middle.rho),
                              middle, right};
        } else {
            fan.wave2 = Rarefaction{Family::Two, middle.u() + c, u_r + c, middle, right};
        }
    }
    return fan;
}

FluidState sample_fan(const WaveFan& fan, double xi) {
    if (!fan.wave1 && !fan.wave2) {
        return xi < fan.middle.u() ? fan.left : fan.right;
    }
    if (fan.wave1) {
        const Wave& w = *fan.wave1;
        if (const auto* s = std::get_if<Shock>(&w)) {
            if (xi < s->speed) return fan.left;
        } else {
            const auto& r = std::get<Rarefaction>(w);
            if (xi < r.head_speed) return fan.left;
            if (xi <= r.tail_speed) return rarefaction_connect(fan.left, Family::One, xi, fan.c);
        }
    }
    if (fan.wave2) {
        const Wave& w = *fan.wave2;
        if (const auto* s = std::get_if<Shock>(&w)) {
            return xi < s->speed ? fan.middle : fan.right;
        }
        const auto& r = std::get<Rarefaction>(w);
        if (xi < r.head_speed) return fan.middle;
        if (xi <= r.tail_speed) return rarefaction_connect(fan.middle, Family::Two, xi, fan.c);
        return fan.right;
    }
    return fan.middle;
}

} // namespace partriemann
