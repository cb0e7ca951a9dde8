#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "partriemann/errors.hpp"
#include "partriemann/euler_waves.hpp"

using namespace partriemann;

namespace {

// Plain bisection on rho - sqrt(rho) - 1, independent of the library.
double colliding_density_oracle() {
    double lo = 1.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid - std::sqrt(mid) - 1.0 > 0.0) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void check_rankine_hugoniot(const Shock& s, double c) {
    const auto& a = s.upstream;
    const auto& b = s.downstream;
    const double mass = (b.q - a.q) - s.speed * (b.rho - a.rho);
    const double flux_a = a.q * a.q / a.rho + c * c * a.rho;
    const double flux_b = b.q * b.q / b.rho + c * c * b.rho;
    const double mom = (flux_b - flux_a) - s.speed * (b.q - a.q);
    const double scale = 1.0 + std::abs(flux_a) + std::abs(flux_b);
    CHECK(std::abs(mass) <= 1e-10 * (1.0 + std::abs(a.q) + std::abs(b.q)));
    CHECK(std::abs(mom) <= 1e-10 * scale);
}

void check_fan(const WaveFan& fan) {
    double last = -INFINITY;
    for (const auto* w : {&fan.wave1, &fan.wave2}) {
        if (!*w) continue;
        CHECK(slowest_speed(**w) >= last - 1e-12);
        last = fastest_speed(**w);
        if (const auto* s = std::get_if<Shock>(&**w)) {
            check_rankine_hugoniot(*s, fan.c);
            CHECK(s->upstream.u() >= s->downstream.u() - 1e-12);
        } else {
            const auto& r = std::get<Rarefaction>(**w);
            CHECK(r.head_speed <= r.tail_speed);
            CHECK(r.upstream.u() <= r.downstream.u() + 1e-12);
        }
    }
}

} // namespace

TEST_CASE("eigenvalues") {
    auto e = eigenvalues({1, 0}, 1);
    CHECK(e.first == -1);
    CHECK(e.second == 1);
    e = eigenvalues({2, 4}, 2);
    CHECK(e.first == 0);
    CHECK(e.second == 4);
    e = eigenvalues({0.5, -1}, 1);
    CHECK(e.first == -3);
    CHECK(e.second == -1);
    CHECK_THROWS_AS(eigenvalues({0.0, 1}, 1), InvalidArgument);
}

TEST_CASE("shock_connect") {
    auto s = shock_connect({1, 0}, Family::Two, 4, 1);
    CHECK(s.speed == doctest::Approx(2).epsilon(1e-15));
    CHECK(s.state.q == doctest::Approx(6).epsilon(1e-15));

    s = shock_connect({1, 1}, Family::One, 1, 1);
    CHECK(s.speed == 0.0);
    CHECK(s.state.q == 1.0);
    CHECK(s.entropic);

    s = shock_connect({1, 1}, Family::One, colliding_density_oracle(), 1);
    CHECK(std::abs(s.state.u()) <= 1e-12);
    CHECK(s.entropic);

    CHECK_THROWS_AS(shock_connect({1, 1}, Family::One, 0.0, 1), InvalidArgument);
}

TEST_CASE("shock_connect back to the start density is the identity") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> rho(0.1, 10), u(-3, 3);
    for (int i = 0; i < 200; ++i) {
        const FluidState from = FluidState::from_velocity(rho(gen), u(gen));
        for (Family f : {Family::One, Family::Two}) {
            const auto there = shock_connect(from, f, rho(gen), 1.3);
            const auto back = shock_connect(there.state, f, from.rho, 1.3);
            CHECK(rel(back.state.rho, from.rho) <= 1e-12);
            CHECK(std::abs(back.state.q - from.q) <= 1e-12 * (1 + std::abs(from.q)));
        }
    }
}

TEST_CASE("rarefaction_connect") {
    const FluidState a{1, 1};
    const auto same = rarefaction_connect(a, Family::One, 0.0, 1);
    CHECK(same.rho == a.rho);
    CHECK(same.q == a.q);

    const auto b = rarefaction_connect(a, Family::One, 1.0, 1);
    CHECK(b.rho == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(b.q == doctest::Approx(2 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(b.u() == doctest::Approx(2).epsilon(1e-14));

    const auto r = rarefaction_connect({1, -1}, Family::Two, 1.0, 1);
    // 2-rarefaction: u = u_from + c ln(rho / rho_from).
    const double rho_oracle = std::exp((0.0 - (-1.0)) / 1.0);
    CHECK(r.rho == doctest::Approx(rho_oracle).epsilon(1e-14));
    CHECK(std::abs(r.u()) <= 1e-14);

    CHECK_THROWS_AS(rarefaction_connect(a, Family::One, -0.5, 1), InvalidArgument);
}

TEST_CASE("classical Riemann problem") {
    SUBCASE("identical states give a constant fan") {
        const auto fan = solve_classical_riemann({2, 1}, {2, 1}, 1);
        CHECK(!fan.wave1);
        CHECK(!fan.wave2);
        CHECK(sample_fan(fan, 0.3).rho == 2);
    }
    SUBCASE("colliding streams") {
        const auto fan = solve_classical_riemann(FluidState::from_velocity(1, 1),
                                                 FluidState::from_velocity(1, -1), 1);
        CHECK(std::abs(fan.middle.u()) <= 1e-12);
        CHECK(std::abs(fan.middle.rho - colliding_density_oracle()) <= 1e-12);
        REQUIRE(fan.wave1);
        REQUIRE(fan.wave2);
        CHECK(std::holds_alternative<Shock>(*fan.wave1));
        CHECK(std::holds_alternative<Shock>(*fan.wave2));
        check_fan(fan);
        const auto mid = sample_fan(fan, 0.0);
        CHECK(mid.rho == fan.middle.rho);
    }
    SUBCASE("diverging streams") {
        const auto fan = solve_classical_riemann(FluidState::from_velocity(1, -1),
                                                 FluidState::from_velocity(1, 1), 1);
        CHECK(std::abs(fan.middle.u()) <= 1e-12);
        CHECK(fan.middle.rho == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
        CHECK(std::holds_alternative<Rarefaction>(*fan.wave1));
        CHECK(std::holds_alternative<Rarefaction>(*fan.wave2));
        check_fan(fan);
    }
}

TEST_CASE("random fans: entropy, ordering, far-field and mirror symmetry") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> rho(0.05, 20), u(-8, 8), c(0.3, 3);
    for (int i = 0; i < 500; ++i) {
        const double cs = c(gen);
        const auto l = FluidState::from_velocity(rho(gen), u(gen));
        const auto r = FluidState::from_velocity(rho(gen), u(gen));
        const auto fan = solve_classical_riemann(l, r, cs);
        check_fan(fan);
        // Middle state lies on both wave curves.
        const double u1 = wave_curve_velocity(Family::One, l, fan.middle.rho, cs);
        const double u2 = wave_curve_velocity(Family::Two, r, fan.middle.rho, cs);
        CHECK(std::abs(u1 - fan.middle.u()) <= 1e-11 * (1 + std::abs(u1)));
        CHECK(std::abs(u2 - fan.middle.u()) <= 1e-11 * (1 + std::abs(u2)));

        const auto far_left = sample_fan(fan, -1e9);
        const auto far_right = sample_fan(fan, 1e9);
        CHECK(far_left.rho == l.rho);
        CHECK(far_left.q == l.q);
        CHECK(far_right.rho == r.rho);
        CHECK(far_right.q == r.q);

        const auto mirrored = solve_classical_riemann({r.rho, -r.q}, {l.rho, -l.q}, cs);
        CHECK(rel(mirrored.middle.rho, fan.middle.rho) <= 1e-12);
        CHECK(mirrored.wave1.has_value() == fan.wave2.has_value());
        CHECK(mirrored.wave2.has_value() == fan.wave1.has_value());
    }
}
