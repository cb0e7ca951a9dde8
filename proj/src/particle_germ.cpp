#include "partriemann/particle_germ.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "partriemann/errors.hpp"
#include "partriemann/roots.hpp"

namespace partriemann {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ParticleState flip(const ParticleState& s) { return {s.rho, -s.alpha}; }

bool feasible_theta(const SonicPotential& f, double f_in, double theta) {
    if (theta > f_in) return false;
    const double shock = f.inverse(Branch::Supersonic, f_in - theta);
    return f(mirror(f.alpha(), f.c(), shock)) >= 1.0 - theta;
}

// Orientation alpha > 0, entry supersonic.
traversal::SupersonicFamily supersonic_exits(const ParticleState& entry, const DragLaw& law,
                                             double c) {
    const SonicPotential f(law, entry.alpha, c);
    const double f_in = f(entry.rho);
    traversal::SupersonicFamily out;
    if (f_in >= 1.0) {
        out.continuous_exit = ParticleState{f.inverse(Branch::Supersonic, f_in - 1.0), entry.alpha};
    }

    std::vector<std::pair<double, bool>> grid(kThetaGridPoints);
    for (int i = 0; i < kThetaGridPoints; ++i) {
        const double theta = static_cast<double>(i) / (kThetaGridPoints - 1);
        grid[i] = {theta, feasible_theta(f, f_in, theta)};
        if (grid[i].second) {
            if (auto exit = exit_for_theta(entry, theta, law, c)) {
                out.samples.emplace_back(theta, *exit);
            }
        }
    }
    // The feasible set can end strictly inside [0, 1]; pin its edges.
    for (int i = 0; i + 1 < kThetaGridPoints; ++i) {
        if (grid[i].second == grid[i + 1].second) continue;
        double ok = grid[i].second ? grid[i].first : grid[i + 1].first;
        double bad = grid[i].second ? grid[i + 1].first : grid[i].first;
        for (int it = 0; it < 80 && ok != bad; ++it) {
            const double mid = 0.5 * (ok + bad);
            if (mid == ok || mid == bad) break;
            (feasible_theta(f, f_in, mid) ? ok : bad) = mid;
        }
        if (auto exit = exit_for_theta(entry, ok, law, c)) out.samples.emplace_back(ok, *exit);
    }
    std::sort(out.samples.begin(), out.samples.end());

    for (const auto& [theta, rho] : out.samples) {
        out.jump_min = out.jump_min ? std::min(*out.jump_min, rho) : rho;
        out.jump_max = out.jump_max ? std::max(*out.jump_max, rho) : rho;
        if (theta == 0.0) out.exit_theta0 = rho;
        if (theta == 1.0) out.exit_theta1 = rho;
    }
    return out;
}

// Orientation alpha > 0.
GermCheck check_positive(const GermPair& pair, const DragLaw& law, double c, double tol) {
    GermCheck check;
    check.alpha_mismatch = std::abs(pair.minus.alpha - pair.plus.alpha);
    const double alpha = pair.minus.alpha;
    const SonicPotential f(law, alpha, c);
    const double sonic = f.sonic_density();
    const double rm = pair.minus.rho;
    const double rp = pair.plus.rho;
    const double f_minus = f(rm);

    double best = kInf;
    if ((sonic - rp) * (sonic - rm) >= -tol * sonic * sonic) {
        best = std::abs(f.drop(rm, rp) - 1.0);
        check.matched = GermCase::Continuous;
    }

    if (c * rm < alpha && rp >= sonic * (1.0 - tol)) {
        auto residual = [&](double theta) {
            const double shock = f.inverse(Branch::Supersonic, std::max(f_minus - theta, 0.0));
            return f.drop(mirror(alpha, c, shock), rp) - (1.0 - theta);
        };
        const double theta_max = std::min(1.0, f_minus);
        double theta = 0.0;
        double jump = kInf;
        if (pair.theta) {
            theta = *pair.theta;
            if (theta >= 0.0 && theta <= theta_max) jump = std::abs(residual(theta));
        } else {
            // residual(theta) is continuous; take its best zero on a scan.
            constexpr int kScan = kThetaGridPoints;
            double prev_t = 0.0;
            double prev_r = residual(0.0);
            jump = std::abs(prev_r);
            for (int i = 1; i < kScan; ++i) {
                const double t = theta_max * i / (kScan - 1);
                const double r = residual(t);
                if (std::abs(r) < jump) {
                    jump = std::abs(r);
                    theta = t;
                }
                if ((r > 0.0) != (prev_r > 0.0)) {
                    const double root = roots::bisect(residual, prev_t, t, prev_r, r);
                    const double at_root = std::abs(residual(root));
                    if (at_root < jump) {
                        jump = at_root;
                        theta = root;
                    }
                }
                prev_t = t;
                prev_r = r;
            }
        }
        if (jump < best) {
            best = jump;
            check.matched = GermCase::Jump;
            check.theta = theta;
        }
    }

    check.relation = best;
    check.member = check.alpha_mismatch <= tol * (1.0 + std::abs(alpha)) && best <= tol;
    if (!std::isfinite(best)) check.matched = GermCase::NotInGerm;
    return check;
}

struct Regularization {
    Regularizer kind;
    double eps;

    double slope(double xi) const {
        const double t = xi / eps + 0.5;
        if (t < 0.0 || t > 1.0) return 0.0;
        return kind == Regularizer::Ramp ? 1.0 / eps : 6.0 * t * (1.0 - t) / eps;
    }

    // xi at which H = theta.
    double position(double theta) const {
        if (kind == Regularizer::Ramp) return (theta - 0.5) * eps;
        if (theta <= 0.0) return -0.5 * eps;
        if (theta >= 1.0) return 0.5 * eps;
        const double t = roots::bisect(
            [theta](double s) { return s * s * (3.0 - 2.0 * s) - theta; }, 0.0, 1.0);
        return (t - 0.5) * eps;
    }
};

// Orientation alpha > 0; samples are appended in increasing xi. `last`
// receives the density reached at the end of the integration.
ProfilePath integrate_positive(const ParticleState& entry, const DragLaw& law, double c,
                               const Regularization& reg, std::optional<double> theta,
                               int steps, int stride, double* last = nullptr) {
    const double alpha = entry.alpha;
    const double sonic = alpha / c;
    ProfilePath path;
    if (entry.rho == sonic) {
        path.pinched = ProfilePinched{-0.5 * reg.eps, entry.rho};
        return path;
    }

    auto rhs = [&](double xi, double rho) {
        return -law(rho, alpha) * reg.slope(xi) / (c * c - alpha * alpha / (rho * rho));
    };

    double rho = entry.rho;
    auto record = [&](double xi, double value) {
        if (stride > 0) path.samples.push_back({xi, value});
    };
    record(-0.5 * reg.eps, rho);

    // RK4 on [a, b]; false when the profile meets the sonic density.
    auto run = [&](double a, double b) {
        if (!(b > a)) return true;
        const bool supersonic = rho < sonic;
        auto same_side = [&](double r) {
            return std::isfinite(r) && r > 0.0 && (r < sonic) == supersonic && r != sonic;
        };
        const double h = (b - a) / steps;
        for (int i = 0; i < steps; ++i) {
            const double xi = a + i * h;
            const double k1 = rhs(xi, rho);
            const double r2 = rho + 0.5 * h * k1;
            if (!same_side(r2)) return path.pinched = ProfilePinched{xi, rho}, false;
            const double k2 = rhs(xi + 0.5 * h, r2);
            const double r3 = rho + 0.5 * h * k2;
            if (!same_side(r3)) return path.pinched = ProfilePinched{xi, rho}, false;
            const double k3 = rhs(xi + 0.5 * h, r3);
            const double r4 = rho + h * k3;
            if (!same_side(r4)) return path.pinched = ProfilePinched{xi, rho}, false;
            const double k4 = rhs(xi + h, r4);
            const double next = rho + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!same_side(next)) return path.pinched = ProfilePinched{xi, rho}, false;
            rho = next;
            if (stride > 0 && ((i + 1) % stride == 0 || i + 1 == steps)) {
                record(i + 1 == steps ? b : xi + h, rho);
            }
        }
        return true;
    };

    const double lo = -0.5 * reg.eps;
    const double hi = 0.5 * reg.eps;
    if (!theta) {
        run(lo, hi);
    } else {
        const double xi_jump = reg.position(*theta);
        if (run(lo, xi_jump)) {
            rho = mirror(alpha, c, rho);
            record(xi_jump, rho);
            run(xi_jump, hi);
        }
    }
    if (last) *last = rho;
    return path;
}

} // namespace

bool ParticleState::subsonic(double c) const { return c * rho >= std::abs(alpha); }

ParticleState to_particle(const FluidState& state, double v) {
    return {state.rho, state.q - v * state.rho};
}

FluidState to_fluid(const ParticleState& state, double v) {
    return {state.rho, state.alpha + v * state.rho};
}

ParticleState reflect(const ParticleState& state) { return flip(state); }

GermPair reflect(const GermPair& pair) {
    return {flip(pair.plus), flip(pair.minus), -pair.v, pair.theta};
}

std::optional<double> exit_for_theta(const ParticleState& entry, double theta,
                                     const DragLaw& law, double c) {
    if (!(entry.alpha > 0.0)) throw InvalidArgument("exit_for_theta: requires alpha > 0");
    if (!(entry.rho > 0.0)) throw InvalidArgument("exit_for_theta: density must be positive");
    if (c * entry.rho > entry.alpha) {
        throw InvalidArgument("exit_for_theta: entry must be supersonic");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidArgument("exit_for_theta: theta not in [0, 1]");
    const SonicPotential f(law, entry.alpha, c);
    const double f_in = f(entry.rho);
    if (theta > f_in) return std::nullopt;
    const double shock = f.inverse(Branch::Supersonic, f_in - theta);
    const double budget = f(mirror(entry.alpha, c, shock)) - (1.0 - theta);
    if (budget < 0.0) return std::nullopt;
    return f.inverse(Branch::Subsonic, budget);
}

TraversalOutcome traverse(const ParticleState& entry, const DragLaw& law, double c) {
    if (!(entry.rho > 0.0) || !std::isfinite(entry.rho) || !std::isfinite(entry.alpha)) {
        throw InvalidArgument("traverse: invalid entry state");
    }
    if (!(c > 0.0)) throw InvalidArgument("traverse: sound speed must be positive");
    if (entry.alpha == 0.0) return traversal::Identity{entry};
    if (entry.alpha < 0.0) {
        TraversalOutcome outcome = traverse(flip(entry), law.reflected(), c);
        if (auto* u = std::get_if<traversal::UniqueSubsonic>(&outcome)) u->exit = flip(u->exit);
        if (auto* s = std::get_if<traversal::SupersonicFamily>(&outcome)) {
            if (s->continuous_exit) s->continuous_exit = flip(*s->continuous_exit);
        }
        return outcome;
    }

    if (entry.subsonic(c)) {
        const SonicPotential f(law, entry.alpha, c);
        const double f_in = f(entry.rho);
        if (f_in < 1.0) return traversal::NoTraversal{};
        return traversal::UniqueSubsonic{
            ParticleState{f.inverse(Branch::Subsonic, f_in - 1.0), entry.alpha}};
    }
    auto family = supersonic_exits(entry, law, c);
    if (!family.continuous_exit && family.samples.empty()) return traversal::NoTraversal{};
    return family;
}

GermCheck germ_residual(const GermPair& pair, const DragLaw& law, double c, double tolerance) {
    if (!(pair.minus.rho > 0.0) || !(pair.plus.rho > 0.0)) {
        throw InvalidArgument("germ_residual: densities must be positive");
    }
    const double alpha = pair.minus.alpha;
    if (std::abs(alpha) <= tolerance * tolerance) {
        GermCheck check;
        check.alpha_mismatch = std::abs(pair.minus.alpha - pair.plus.alpha);
        check.relation = std::abs(pair.minus.rho - pair.plus.rho) /
                         std::max(pair.minus.rho, pair.plus.rho);
        check.matched = GermCase::Identity;
        check.member = check.alpha_mismatch <= tolerance && check.relation <= tolerance;
        return check;
    }
    if (alpha < 0.0) return check_positive(reflect(pair), law.reflected(), c, tolerance);
    return check_positive(pair, law, c, tolerance);
}

namespace {

void check_profile_arguments(const ParticleState& entry, double c, double epsilon,
                             std::optional<double> theta, int steps) {
    if (entry.alpha == 0.0) throw InvalidArgument("integrate_profile: alpha must be nonzero");
    if (!(entry.rho > 0.0)) throw InvalidArgument("integrate_profile: density must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgument("integrate_profile: epsilon must be positive");
    if (!(c > 0.0)) throw InvalidArgument("integrate_profile: sound speed must be positive");
    if (steps < 1) throw InvalidArgument("integrate_profile: steps must be positive");
    if (theta) {
        if (!(*theta >= 0.0 && *theta <= 1.0)) {
            throw InvalidArgument("integrate_profile: theta not in [0, 1]");
        }
        if (entry.subsonic(c)) {
            throw InvalidArgument("integrate_profile: a jump needs a supersonic entry");
        }
    }
}

} // namespace

ProfilePath integrate_profile_path(const ParticleState& entry, const DragLaw& law, double c,
                                   Regularizer regularizer, double epsilon,
                                   std::optional<double> theta, int steps, int stride) {
    check_profile_arguments(entry, c, epsilon, theta, steps);
    const Regularization reg{regularizer, epsilon};
    if (entry.alpha > 0.0) return integrate_positive(entry, law, c, reg, theta, steps, stride);

    ProfilePath path = integrate_positive(flip(entry), law.reflected(), c, reg, theta, steps, stride);
    std::reverse(path.samples.begin(), path.samples.end());
    for (auto& s : path.samples) s.xi = -s.xi;
    if (path.pinched) path.pinched->xi = -path.pinched->xi;
    return path;
}

std::variant<ParticleState, ProfilePinched>
integrate_profile(const ParticleState& entry, const DragLaw& law, double c,
                  Regularizer regularizer, double epsilon, std::optional<double> theta,
                  int steps) {
    check_profile_arguments(entry, c, epsilon, theta, steps);
    const bool positive = entry.alpha > 0.0;
    double rho = 0.0;
    ProfilePath path =
        integrate_positive(positive ? entry : flip(entry), positive ? law : law.reflected(), c,
                           Regularization{regularizer, epsilon}, theta, steps, 0, &rho);
    if (path.pinched) {
        if (!positive) path.pinched->xi = -path.pinched->xi;
        return *path.pinched;
    }
    return ParticleState{rho, entry.alpha};
}

} // namespace partriemann
