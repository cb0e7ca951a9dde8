#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "partriemann/errors.hpp"
#include "partriemann/wave_sets.hpp"

using namespace partriemann;

namespace {

const double kGolden2 = (3 + std::sqrt(5.0)) / 2;

enum class Verdict { In, Out, Unclear };

// Brute force: P is a left trace iff every wave of W(L, P) is no faster than v.
Verdict oracle_minus(const FluidState& left, const ParticleState& p, double v, double c) {
    const auto fan = solve_classical_riemann(left, to_fluid(p, v), c);
    double fastest = -INFINITY;
    if (fan.wave1) fastest = std::max(fastest, fastest_speed(*fan.wave1));
    if (fan.wave2) fastest = std::max(fastest, fastest_speed(*fan.wave2));
    if (!fan.wave1 && !fan.wave2) return Verdict::In;
    if (fastest < v - 1e-6) return Verdict::In;
    if (fastest > v + 1e-6) return Verdict::Out;
    return Verdict::Unclear;
}

// P is a right trace iff every wave of W(P, R) is no slower than v.
Verdict oracle_plus(const FluidState& right, const ParticleState& p, double v, double c) {
    const auto fan = solve_classical_riemann(to_fluid(p, v), right, c);
    double slowest = INFINITY;
    if (fan.wave1) slowest = std::min(slowest, slowest_speed(*fan.wave1));
    if (fan.wave2) slowest = std::min(slowest, slowest_speed(*fan.wave2));
    if (!fan.wave1 && !fan.wave2) return Verdict::In;
    if (slowest > v + 1e-6) return Verdict::In;
    if (slowest < v - 1e-6) return Verdict::Out;
    return Verdict::Unclear;
}

} // namespace

TEST_CASE("curve extremities") {
    const auto m = build_minus({1, 0}, 0, 1);
    CHECK(m.rho_ex() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(m.f(1.0) == 0.0);
    CHECK(m.f(m.rho_ex()) == doctest::Approx(m.rho_ex()).epsilon(1e-14));
    CHECK(m.alpha_max() == doctest::Approx(m.rho_ex()).epsilon(1e-14));

    const auto p = build_plus({1, 0}, 0, 1);
    CHECK(p.rho_ex() == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(p.f(1.0) == 0.0);

    // Supersonic right datum alpha_R < -c rho_R: extremity is the mirror density.
    const auto sp = build_plus(FluidState::from_velocity(1.0, -3.0), 0, 1);
    CHECK(sp.rho_ex() == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(sp.f(sp.rho_ex()) == doctest::Approx(-3.0).epsilon(1e-14));
    // Supersonic left datum.
    const auto sm = build_minus(FluidState::from_velocity(1.0, 3.0), 0, 1);
    CHECK(sm.rho_ex() == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(sm.alpha_max() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(sm.f(2.0), InvalidArgument);
}

TEST_CASE("shape: decreasing, concave, below the sonic line, continuous at the datum") {
    std::mt19937 gen(8);
    std::uniform_real_distribution<double> rho(0.2, 5), u(-4, 4), v(-2, 2);
    for (int k = 0; k < 40; ++k) {
        const double c = 1.1;
        const FluidState left = FluidState::from_velocity(rho(gen), u(gen));
        const auto m = build_minus(left, v(gen), c);
        const double a = m.rho_ex(), b = 4 * m.rho_sonic();
        double prev = m.f(a);
        double prev_slope = INFINITY;
        for (int i = 1; i <= 1000; ++i) {
            const double r = a + (b - a) * i / 1000.0;
            const double val = m.f(r);
            CHECK(val < prev);
            const double slope = (val - prev) * 1000.0 / (b - a);
            CHECK(slope <= prev_slope + 1e-6 * (1 + std::abs(slope)));
            CHECK(val < c * r);
            prev = val;
            prev_slope = slope;
        }
        // Junction of the rarefaction and shock branches.
        const double rl = left.rho;
        if (rl > m.rho_ex() * 1.01) {
            const double h = 1e-6 * rl;
            const double lhs = (m.f(rl) - m.f(rl - h)) / h;
            const double rhs = (m.f(rl + h) - m.f(rl)) / h;
            CHECK(std::abs(lhs - rhs) <= 1e-5 * (1 + std::abs(lhs)));
            CHECK(m.f(rl) == doctest::Approx(m.datum().alpha).epsilon(1e-14));
        }
    }
}

TEST_CASE("plus curve is the reflection of the minus curve and matches the explicit form") {
    std::mt19937 gen(9);
    std::uniform_real_distribution<double> rho(0.2, 5), u(-4, 4), v(-2, 2);
    for (int k = 0; k < 40; ++k) {
        const double c = 0.9;
        const double vv = v(gen);
        const FluidState right = FluidState::from_velocity(rho(gen), u(gen));
        const auto p = build_plus(right, vv, c);
        const auto image = build_minus({right.rho, -right.q}, -vv, c);
        const double ar = right.q - vv * right.rho;
        const double ur = right.u();
        const double rho_ex = ur + c >= vv ? right.rho * std::exp((vv - (ur + c)) / c)
                                           : std::pow((vv - ur) / c, 2) * right.rho;
        CHECK(p.rho_ex() == doctest::Approx(rho_ex).epsilon(1e-13));
        for (double t : {1.0, 1.3, 2.0, 5.0, 11.0}) {
            const double r = rho_ex * t;
            CHECK(p.f(r) == -image.f(r));
            const double explicit_f =
                r <= right.rho ? (ar / right.rho + c * std::log(r / right.rho)) * r
                               : ar + (ar / right.rho + c * std::sqrt(r / right.rho)) * (r - right.rho);
            CHECK(std::abs(p.f(r) - explicit_f) <= 1e-12 * (1 + std::abs(explicit_f)));
            if (t > 1.0) CHECK(p.f(r) > -c * r);
        }
        for (double t : {0.1, 0.5, 0.9}) {
            const double r = t * p.rho_sonic();
            CHECK(std::abs(p.f_sup(r) + image.f_sup(r)) <= 1e-12 * (1 + std::abs(p.f_sup(r))));
        }
    }
}

TEST_CASE("g_sub round trip and the symmetric example") {
    const auto m = build_minus(FluidState::from_velocity(1, 1), 0, 1);
    const auto p = build_plus(FluidState::from_velocity(1, -1), 0, 1);
    // On the shock branch 1 + (1 - sqrt(rho))(rho - 1) = 0.
    CHECK(m.g_sub(0) == doctest::Approx(kGolden2).epsilon(1e-12));
    CHECK(p.g_sub(0) == doctest::Approx(kGolden2).epsilon(1e-12));
    const auto x = crossing_alpha(m, p);
    REQUIRE(x);
    CHECK(std::abs(x->alpha0) <= 1e-12);

    std::mt19937 gen(10);
    std::uniform_real_distribution<double> t(1.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        const double r = m.rho_ex() * t(gen);
        const double a = *m.f_sub(r);
        CHECK(std::abs(m.g_sub(a) - r) <= 1e-10 * r);
        const double rp = p.rho_ex() * t(gen);
        CHECK(std::abs(p.g_sub(*p.f_sub(rp)) - rp) <= 1e-10 * rp);
    }
    CHECK(m.g_sub(m.alpha_max()) == m.rho_ex());
    CHECK_THROWS_AS(m.g_sub(m.alpha_max() + 1.0), InvalidArgument);
}

TEST_CASE("crossing_alpha") {
    const auto m = build_minus({2, 0}, 0, 1);
    const auto p = build_plus({2, 0}, 0, 1);
    const auto x = crossing_alpha(m, p);
    REQUIRE(x);
    CHECK(std::abs(x->alpha0) <= 1e-12);
    CHECK(x->rho0 == doctest::Approx(2).epsilon(1e-12));

    const auto gm = build_minus(FluidState::from_velocity(1, 0.5), 0, 1);
    const auto gp = build_plus(FluidState::from_velocity(2, -0.3), 0, 1);
    const auto g = crossing_alpha(gm, gp);
    REQUIRE(g);
    CHECK(std::abs(gm.g_sub(g->alpha0) - gp.g_sub(g->alpha0)) <= 1e-10);
    // Independent check: the classical solution at xi = 0 has the same mass flux.
    const auto fan = solve_classical_riemann(FluidState::from_velocity(1, 0.5),
                                             FluidState::from_velocity(2, -0.3), 1);
    CHECK(g->alpha0 == doctest::Approx(sample_fan(fan, 0.0).q).epsilon(1e-9));
}

TEST_CASE("in_V examples") {
    const FluidState left = FluidState::from_velocity(1, 0.5);
    const auto m = build_minus(left, 0, 1);
    CHECK(in_V(m, m.datum()));
    CHECK(in_V(m, {m.g_sub(-0.2), -0.2}));
    CHECK(in_V(m, {m.g_sub(0.3), 0.3}));
    const double r = 0.5 * m.rho_sonic();
    const double boundary = m.f_sup(r);
    CHECK(boundary < -1.0 * r);
    CHECK(in_V(m, {r, boundary - 1e-3}));
    CHECK_FALSE(in_V(m, {r, 0.5 * (boundary - r)}));
    CHECK_FALSE(in_V(m, {r, boundary}));
}

TEST_CASE("in_V agrees with the brute-force Riemann oracle") {
    std::mt19937 gen(12);
    std::uniform_real_distribution<double> rho(0.1, 10), u(-5, 5), v(-2, 2), a(-40, 40);
    int agreed = 0;
    for (int k = 0; k < 60; ++k) {
        const double c = 1.0 + 0.5 * (k % 3);
        const double vv = v(gen);
        const FluidState left = FluidState::from_velocity(rho(gen), u(gen) * c);
        const FluidState right = FluidState::from_velocity(rho(gen), u(gen) * c);
        const auto m = build_minus(left, vv, c);
        const auto p = build_plus(right, vv, c);
        for (int i = 0; i < 50; ++i) {
            const ParticleState s{rho(gen), a(gen)};
            const auto om = oracle_minus(left, s, vv, c);
            if (om != Verdict::Unclear) {
                CHECK(in_V(m, s) == (om == Verdict::In));
                ++agreed;
            }
            const auto op = oracle_plus(right, s, vv, c);
            if (op != Verdict::Unclear) {
                CHECK(in_V(p, s) == (op == Verdict::In));
                ++agreed;
            }
        }
        // Points on the subsonic graphs.
        for (double t : {1.2, 2.0, 3.0}) {
            const double r = m.rho_ex() * t;
            const ParticleState on{r, *m.f_sub(r)};
            CHECK(in_V(m, on));
            CHECK(oracle_minus(left, on, vv, c) != Verdict::Out);
            // Just inside and outside the supersonic boundary.
            const double rs = m.rho_sonic() / t;
            const double b = m.f_sup(rs);
            const double d = 1e-3 * (1 + std::abs(b));
            CHECK(oracle_minus(left, {rs, b - d}, vv, c) != Verdict::Out);
            CHECK(oracle_minus(left, {rs, b + d}, vv, c) != Verdict::In);
        }
    }
    CHECK(agreed > 5000);
}
