#include "partriemann/wave_sets.hpp"

#include <algorithm>
#include <cmath>

#include "partriemann/errors.hpp"
#include "partriemann/roots.hpp"

namespace partriemann {

namespace {

// Smallest hi = start * 2^k with g(hi) < 0, for g decreasing to -inf.
template <class G>
double grow_until_negative(G&& g, double start) {
    double hi = start;
    for (int k = 0; k < 2000; ++k) {
        if (g(hi) < 0.0) return hi;
        hi *= 2.0;
    }
    throw NoRootError("accessible curve: no sign change while growing bracket", start, hi,
                      g(start), g(hi));
}

} // namespace

AccessibleCurveMinus::AccessibleCurveMinus(const FluidState& left, double v, double c)
    : datum_(to_particle(left, v)), v_(v), c_(c) {
    validate(left);
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("sound speed must be positive");
    if (!std::isfinite(v)) throw InvalidArgument("particle velocity must be finite");

    const double rel = left.u() - v;
    if (rel - c <= 0.0) {
        rho_ex_ = left.rho * std::exp(-(v - (left.u() - c)) / c);
    } else {
        rho_ex_ = left.rho * (rel / c) * (rel / c);
    }
    alpha_max_ = f(rho_ex_);

    const double start = 2.0 * std::max(rho_ex_, left.rho);
    auto relative_velocity_gap = [&](double rho) { return f(rho) / rho + c_; };
    double hi = grow_until_negative(relative_velocity_gap, start);
    rho_sonic_ = roots::bisect(relative_velocity_gap, rho_ex_, hi, 0.0, roots::Midpoint::Geometric);

    auto value = [&](double rho) { return f(rho); };
    hi = grow_until_negative(value, start);
    rho_zero_ = roots::bisect(value, rho_ex_, hi, 0.0, roots::Midpoint::Geometric);
}

double AccessibleCurveMinus::f(double rho) const {
    if (!(rho > 0.0)) throw InvalidArgument("f: density must be positive");
    if (rho < rho_ex_ * (1.0 - 1e-14)) throw InvalidArgument("f: density below curve extremity");
    const double rel = datum_.alpha / datum_.rho; // u_L - v
    if (rho <= datum_.rho) return (rel - c_ * std::log(rho / datum_.rho)) * rho;
    return datum_.alpha + (rel - c_ * std::sqrt(rho / datum_.rho)) * (rho - datum_.rho);
}

std::optional<double> AccessibleCurveMinus::f_sub(double rho) const {
    if (rho < rho_ex_) return std::nullopt;
    if (rho <= rho_sonic_) return f(rho);
    return -c_ * rho;
}

double AccessibleCurveMinus::f_sup(double rho) const {
    if (!(rho > 0.0)) throw InvalidArgument("f_sup: density must be positive");
    if (rho >= rho_sonic_) return -c_ * rho;
    // Boundary point (mirror of rho*, f(rho*)) for rho* in (rho_zero, rho_sonic].
    auto gap = [&](double star) {
        const double a = f(star);
        return a * a / (c_ * c_ * star) - rho;
    };
    const double star =
        roots::bisect(gap, rho_zero_, rho_sonic_, -rho, rho_sonic_ - rho, 0.0,
                      roots::Midpoint::Geometric);
    return f(star);
}

double AccessibleCurveMinus::g_sub(double alpha) const {
    if (std::isnan(alpha)) throw InvalidArgument("g_sub: NaN");
    if (alpha >= alpha_max_) {
        if (alpha > alpha_max_ + 1e-14 * (1.0 + std::abs(alpha_max_))) {
            throw InvalidArgument("g_sub: alpha above the subsonic range");
        }
        return rho_ex_;
    }
    if (alpha <= -c_ * rho_sonic_) return -alpha / c_;
    auto gap = [&](double rho) { return f(rho) - alpha; };
    return roots::bisect(gap, rho_ex_, rho_sonic_, alpha_max_ - alpha, gap(rho_sonic_), 0.0,
                         roots::Midpoint::Geometric);
}

double AccessibleCurveMinus::g_sup(double alpha) const {
    if (!(alpha < 0.0)) throw InvalidArgument("g_sup: requires alpha < 0");
    return mirror(alpha, c_, g_sub(alpha));
}

bool AccessibleCurveMinus::contains(const ParticleState& s) const {
    if (!(s.rho > 0.0)) return false;
    if (std::abs(s.rho - datum_.rho) <= 1e-14 * datum_.rho &&
        std::abs(s.alpha - datum_.alpha) <= 1e-14 * (std::abs(datum_.alpha) + c_ * datum_.rho)) {
        return true;
    }
    const double scale = 1.0 + std::abs(s.alpha) + c_ * s.rho;
    if (s.rho >= rho_ex_ * (1.0 - 1e-12) && std::abs(s.alpha) <= c_ * s.rho + 1e-10 * scale) {
        const double on = *f_sub(std::max(s.rho, rho_ex_));
        if (std::abs(s.alpha - on) <= 1e-10 * scale) return true;
    }
    return s.alpha < -c_ * s.rho && s.alpha < f_sup(s.rho);
}

AccessibleCurvePlus::AccessibleCurvePlus(const FluidState& right, double v, double c)
    : datum_(to_particle(right, v)), image_(FluidState{right.rho, -right.q}, -v, c) {}

std::optional<double> AccessibleCurvePlus::f_sub(double rho) const {
    auto value = image_.f_sub(rho);
    if (value) *value = -*value;
    return value;
}

bool AccessibleCurvePlus::contains(const ParticleState& state) const {
    return image_.contains(reflect(state));
}

AccessibleCurveMinus build_minus(const FluidState& left, double v, double c) {
    return AccessibleCurveMinus(left, v, c);
}

AccessibleCurvePlus build_plus(const FluidState& right, double v, double c) {
    return AccessibleCurvePlus(right, v, c);
}

bool in_V(const AccessibleCurveMinus& curve, const ParticleState& state) {
    return curve.contains(state);
}

bool in_V(const AccessibleCurvePlus& curve, const ParticleState& state) {
    return curve.contains(state);
}

std::optional<Crossing> crossing_alpha(const AccessibleCurveMinus& minus,
                                       const AccessibleCurvePlus& plus) {
    const double top = minus.alpha_max();
    const double bot = plus.alpha_min();
    if (bot > top) return std::nullopt;
    // Decreasing: g_minus decreases and g_plus increases with alpha.
    auto gap = [&](double a) { return minus.g_sub(a) - plus.g_sub(a); };
    const double d_top = gap(top);
    const double d_bot = gap(bot);
    const double tol = 1e-12;
    if (std::abs(d_top) <= tol * minus.rho_ex()) return Crossing{top, minus.rho_ex()};
    if (std::abs(d_bot) <= tol * plus.rho_ex()) return Crossing{bot, plus.rho_ex()};
    if (!(d_top < 0.0 && d_bot > 0.0)) return std::nullopt;
    const double a0 = roots::bisect(gap, bot, top, d_bot, d_top);
    return Crossing{a0, 0.5 * (minus.g_sub(a0) + plus.g_sub(a0))};
}

} // namespace partriemann
