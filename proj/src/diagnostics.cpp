#include "partriemann/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "partriemann/errors.hpp"

namespace partriemann {

namespace {

constexpr double kShapeTolerance = 1e-10;

double momentum_flux(const FluidState& s, double c) { return s.q * s.q / s.rho + c * c * s.rho; }

void check_wave(const Wave& wave, double c, DiagnosticsReport& report) {
    if (const auto* shock = std::get_if<Shock>(&wave)) {
        if (!(shock->upstream.u() > shock->downstream.u())) report.shocks_admissible = false;
        return;
    }
    const auto& fan = std::get<Rarefaction>(wave);
    const int k = fan.family == Family::One ? 0 : 1;
    auto speed = [&](const FluidState& s) {
        const auto [l1, l2] = eigenvalues(s, c);
        return k == 0 ? l1 : l2;
    };
    const double scale = kShapeTolerance * (1.0 + std::abs(fan.head_speed) + c);
    if (fan.head_speed > fan.tail_speed + scale ||
        std::abs(fan.head_speed - speed(fan.upstream)) > scale ||
        std::abs(fan.tail_speed - speed(fan.downstream)) > scale) {
        report.rarefactions_ordered = false;
    }
}

} // namespace

double entropy(const FluidState& s, double c) {
    return s.q * s.q / (2.0 * s.rho) + c * c * s.rho * std::log(s.rho);
}

double entropy_flux(const FluidState& s, double c) {
    return s.u() * (entropy(s, c) + c * c * s.rho);
}

double particle_acceleration(const FluidState& minus, const FluidState& plus, double v, double c,
                             double mass) {
    const double a_minus = minus.q - v * minus.rho;
    const double a_plus = plus.q - v * plus.rho;
    if (std::abs(a_minus - a_plus) > 1e-10 * std::max(1.0, std::abs(a_minus))) {
        throw InvalidArgument("particle_acceleration: relative momenta differ");
    }
    const double w_minus = minus.u() - v;
    const double w_plus = plus.u() - v;
    return (c * c - w_minus * w_plus) * (minus.rho - plus.rho) / mass;
}

double momentum_flux_jump(const FluidState& minus, const FluidState& plus, double v, double c,
                          double mass) {
    return (v * (plus.q - minus.q) + momentum_flux(minus, c) - momentum_flux(plus, c)) / mass;
}

double interface_dissipation(const GermPair& pair, double c) {
    const double alpha = pair.minus.alpha;
    if (alpha == 0.0) return 0.0;
    const double rm = pair.minus.rho;
    const double rp = pair.plus.rho;
    const double kinetic = 0.5 * alpha * alpha * (rm - rp) * (rm + rp) / (rm * rm * rp * rp);
    const double pressure = c * c * std::log1p((rp - rm) / rm);
    return alpha * (kinetic + pressure);
}

bool DiagnosticsReport::passed() const {
    return shocks_admissible && rarefactions_ordered && fans_ordered && germ_member &&
           germ_relation <= kResidualTolerance && dissipation <= kDissipationTolerance &&
           momentum_residual <= kResidualTolerance && mirror_bound;
}

DiagnosticsReport diagnose(const ParticleRiemannProblem& p, const ParticleRiemannSolution& s,
                           double mass) {
    DiagnosticsReport report;
    for (const auto* fan : {&s.left_fan, &s.right_fan}) {
        for (const auto* w : {&fan->wave1, &fan->wave2}) {
            if (*w) check_wave(**w, p.c, report);
        }
    }
    const auto solver = check_solution(p, s);
    report.fans_ordered = solver.left_fan_slower && solver.right_fan_faster;
    report.germ_member = solver.germ_member;
    report.germ_relation = solver.germ_relation;

    const GermPair pair{to_particle(s.minus_trace, p.v), to_particle(s.plus_trace, p.v), p.v,
                        s.theta};
    report.dissipation = interface_dissipation(pair, p.c);
    report.acceleration = particle_acceleration(s.minus_trace, s.plus_trace, p.v, p.c, mass);
    const double jump = momentum_flux_jump(s.minus_trace, s.plus_trace, p.v, p.c, mass);
    const double scale =
        std::max({1.0, momentum_flux(s.minus_trace, p.c), momentum_flux(s.plus_trace, p.c)}) /
        mass;
    report.momentum_residual = std::abs(report.acceleration - jump) / scale;

    const double alpha = pair.minus.alpha;
    const auto& entry = alpha > 0.0 ? pair.minus : pair.plus;
    const auto& exit = alpha > 0.0 ? pair.plus : pair.minus;
    if (alpha != 0.0 && !entry.subsonic(p.c)) {
        report.mirror_bound = exit.rho <= mirror(alpha, p.c, entry.rho) * (1.0 + 1e-12);
    }
    return report;
}

} // namespace partriemann
