#include "partriemann/riemann_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "partriemann/errors.hpp"
#include "partriemann/roots.hpp"

namespace partriemann {

namespace {

constexpr int kDeltaScanPoints = 512;
constexpr double kScanSpan = 1e-12;      // smallest |alpha| of the main scan, relative
constexpr int kExtraDecades = 30;        // further decades tried towards alpha = 0
constexpr double kDedupTolerance = 1e-8;

FluidState flip(const FluidState& s) { return {s.rho, -s.q}; }

struct Candidate {
    FluidState minus;
    FluidState plus;
    double alpha;
    std::optional<double> theta;
    TraceKind kind;
};

Candidate flip(const Candidate& c) {
    return {flip(c.plus), flip(c.minus), -c.alpha, c.theta, c.kind};
}

double speed_tolerance(const ParticleRiemannProblem& p) {
    return 1e-8 * (1.0 + std::abs(p.v) + p.c);
}

ParticleRiemannSolution assemble(const ParticleRiemannProblem& p, const Candidate& cand,
                                 CaseLabel label) {
    ParticleRiemannSolution s{solve_classical_riemann(p.left, cand.minus, p.c),
                              cand.minus,
                              cand.plus,
                              solve_classical_riemann(cand.plus, p.right, p.c),
                              cand.alpha,
                              cand.theta,
                              p.v,
                              label,
                              cand.kind,
                              {}};
    const GermPair pair{to_particle(cand.minus, p.v), to_particle(cand.plus, p.v), p.v,
                        cand.theta};
    s.germ = germ_residual(pair, p.law, p.c);
    return s;
}

Candidate subsonic_candidate(const AccessibleCurveMinus& minus, const AccessibleCurvePlus& plus,
                             double alpha, double v) {
    return {to_fluid({minus.g_sub(alpha), alpha}, v), to_fluid({plus.g_sub(alpha), alpha}, v),
            alpha, std::nullopt, TraceKind::Subsonic};
}

// Root of delta = 1 between a point near zero and `far`, same sign, where
// delta(far) <= 1. The near end is pushed towards zero until delta > 1.
double solve_delta_one(const AccessibleCurveMinus& minus, const AccessibleCurvePlus& plus,
                       const DragLaw& law, double c, double far) {
    const double sign = far > 0.0 ? 1.0 : -1.0;
    auto phi = [&](double t) { return delta(sign * t, minus, plus, law, c) - 1.0; };
    const double hi = std::abs(far);
    const double f_hi = phi(hi);
    double lo = kScanSpan * hi;
    double f_lo = phi(lo);
    for (int k = 0; k < kExtraDecades && !(f_lo > 0.0); ++k) {
        lo *= 0.1;
        f_lo = phi(lo);
    }
    if (!(f_lo > 0.0) || f_hi > 0.0) {
        throw NoRootError("delta = 1 is not bracketed", sign * lo, far, f_lo, f_hi);
    }
    return sign * roots::bisect(phi, lo, hi, f_lo, f_hi, 0.0, roots::Midpoint::Geometric);
}

// Stationary pair at a crossing through alpha = 0, otherwise the delta = 1
// root between zero and the crossing (or the end of the overlap).
Candidate subsonic_root(const ParticleRiemannProblem& p, const AccessibleCurveMinus& minus,
                        const AccessibleCurvePlus& plus) {
    const auto crossing = crossing_alpha(minus, plus);
    double far = 0.0;
    if (crossing) {
        const double scale = p.c * std::max(p.left.rho, p.right.rho);
        if (std::abs(crossing->alpha0) <= 1e-13 * scale) {
            const FluidState trace = to_fluid({crossing->rho0, 0.0}, p.v);
            return {trace, trace, 0.0, std::nullopt, TraceKind::Stationary};
        }
        far = crossing->alpha0;
    } else if (minus.alpha_max() > 0.0 && plus.alpha_min() < 0.0) {
        // No crossing in the overlap: delta blows up to +inf on the side where
        // the graphs at alpha = 0 are ordered accordingly.
        far = minus.g_sub(0.0) > plus.g_sub(0.0) ? minus.alpha_max() : plus.alpha_min();
    } else {
        throw NoRootError("subsonic ranges do not cross", plus.alpha_min(), minus.alpha_max(),
                          0.0, 0.0);
    }
    const double alpha = solve_delta_one(minus, plus, p.law, p.c, far);
    return subsonic_candidate(minus, plus, alpha, p.v);
}

// Standing-shock position for which the jump exit from `entry_rho` lands on
// `target`; residual(0) > 0 > residual(theta_max) is checked by the caller.
template <class Residual>
std::vector<double> theta_roots(Residual&& residual, double theta_max) {
    std::vector<double> out;
    double prev_t = 0.0;
    double prev_r = residual(0.0);
    if (prev_r == 0.0) out.push_back(0.0);
    for (int i = 1; i < kThetaGridPoints; ++i) {
        const double t = theta_max * i / (kThetaGridPoints - 1);
        const double r = residual(t);
        if (r == 0.0) {
            out.push_back(t);
        } else if (prev_r != 0.0 && (r > 0.0) != (prev_r > 0.0)) {
            out.push_back(roots::bisect(residual, prev_t, t, prev_r, r));
        }
        prev_t = t;
        prev_r = r;
    }
    return out;
}

struct SupersonicData {
    double alpha;
    double f_left;     // F at the left density
    double target;     // g_plus_sub(alpha_L)
    double rho_e;      // its mirror, on the plus supersonic boundary
    SonicPotential potential;
};

SupersonicData supersonic_data(const ParticleRiemannProblem& p, const AccessibleCurvePlus& plus) {
    const double alpha = p.left.q - p.v * p.left.rho;
    SonicPotential f(p.law, alpha, p.c);
    const double target = plus.g_sub(alpha);
    return {alpha, f(p.left.rho), target, mirror(alpha, p.c, target), std::move(f)};
}

auto jump_residual(const SupersonicData& d) {
    return [&d](double theta) {
        const double shock =
            d.potential.inverse(Branch::Supersonic, std::max(d.f_left - theta, 0.0));
        return d.potential.drop(mirror(d.alpha, d.potential.c(), shock), d.target) -
               (1.0 - theta);
    };
}

// Candidates keeping the supersonic left datum as minus trace.
std::vector<Candidate> supersonic_left_candidates(const ParticleRiemannProblem& p) {
    std::vector<Candidate> out;
    const auto plus = build_plus(p.right, p.v, p.c);
    const auto d = supersonic_data(p, plus);
    if (d.f_left >= 1.0) {
        const double rho0 = d.potential.inverse(Branch::Supersonic, d.f_left - 1.0);
        out.push_back({p.left, to_fluid({rho0, d.alpha}, p.v), d.alpha, std::nullopt,
                       TraceKind::SupersonicContinuous});
    }
    const double theta_max = std::min(1.0, d.f_left);
    for (double theta : theta_roots(jump_residual(d), theta_max)) {
        out.push_back({p.left, to_fluid({d.target, d.alpha}, p.v), d.alpha, theta,
                       TraceKind::SupersonicJump});
    }
    return out;
}

void scan_delta(const ParticleRiemannProblem& p, const AccessibleCurveMinus& minus,
                const AccessibleCurvePlus& plus, double sign, std::vector<Candidate>& out) {
    // Magnitudes t of alpha = sign * t within both subsonic ranges.
    const double top = sign > 0.0 ? minus.alpha_max() : -plus.alpha_min();
    const double floor_ = std::max(0.0, sign > 0.0 ? plus.alpha_min() : -minus.alpha_max());
    if (!(top > floor_)) return;

    std::vector<double> ts;
    if (floor_ > 0.0) {
        for (int i = 0; i < kDeltaScanPoints; ++i) {
            ts.push_back(floor_ * std::pow(top / floor_, double(i) / (kDeltaScanPoints - 1)));
        }
    } else {
        for (int k = kExtraDecades; k > 0; --k) ts.push_back(kScanSpan * top * std::pow(10.0, -k));
        for (int i = 0; i < kDeltaScanPoints; ++i) {
            ts.push_back(kScanSpan * top * std::pow(1.0 / kScanSpan, double(i) / (kDeltaScanPoints - 1)));
        }
    }
    ts.back() = top;

    auto phi = [&](double t) { return delta(sign * t, minus, plus, p.law, p.c) - 1.0; };
    double prev_t = 0.0;
    double prev_r = std::nan("");
    for (double t : ts) {
        double r = std::nan("");
        try {
            r = phi(t);
        } catch (const Error&) {
        }
        if (std::isfinite(r) && std::isfinite(prev_r)) {
            if (r == 0.0) {
                out.push_back(subsonic_candidate(minus, plus, sign * t, p.v));
            } else if (prev_r != 0.0 && (r > 0.0) != (prev_r > 0.0)) {
                const double root = roots::bisect(phi, prev_t, t, prev_r, r, 0.0,
                                                  roots::Midpoint::Geometric);
                out.push_back(subsonic_candidate(minus, plus, sign * root, p.v));
            }
        }
        prev_t = t;
        prev_r = r;
    }
}

double trace_distance(const ParticleRiemannSolution& a, const ParticleRiemannSolution& b) {
    auto rel = [](double x, double y) {
        return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
    };
    return std::max({rel(a.minus_trace.rho, b.minus_trace.rho),
                     rel(a.plus_trace.rho, b.plus_trace.rho), rel(a.alpha_star, b.alpha_star)});
}

} // namespace

void validate(const ParticleRiemannProblem& p) {
    validate(p.left);
    validate(p.right);
    if (!(p.c > 0.0) || !std::isfinite(p.c)) throw InvalidArgument("sound speed must be positive");
    if (!std::isfinite(p.v)) throw InvalidArgument("particle velocity must be finite");
}

ParticleRiemannProblem reflect(const ParticleRiemannProblem& p) {
    return {flip(p.right), flip(p.left), -p.v, p.c, p.law.reflected()};
}

const char* to_string(CaseLabel label) {
    switch (label) {
    case CaseLabel::Subsonic: return "subsonic";
    case CaseLabel::SupersonicLeft: return "supersonic_left";
    case CaseLabel::SupersonicRight: return "supersonic_right";
    }
    return "unknown";
}

const char* to_string(TraceKind kind) {
    switch (kind) {
    case TraceKind::Stationary: return "stationary";
    case TraceKind::Subsonic: return "subsonic";
    case TraceKind::SupersonicContinuous: return "supersonic_continuous";
    case TraceKind::SupersonicJump: return "supersonic_jump";
    }
    return "unknown";
}

CaseLabel classify(const ParticleRiemannProblem& p) {
    validate(p);
    const bool left_sup = p.left.u() - p.v > p.c;
    const bool right_sup = p.right.u() - p.v < -p.c;
    if (left_sup && right_sup) {
        const auto minus = build_minus(p.left, p.v, p.c);
        return minus.contains(to_particle(p.right, p.v)) ? CaseLabel::SupersonicRight
                                                         : CaseLabel::SupersonicLeft;
    }
    if (left_sup) return CaseLabel::SupersonicLeft;
    if (right_sup) return CaseLabel::SupersonicRight;
    return CaseLabel::Subsonic;
}

double delta(double alpha, const AccessibleCurveMinus& minus, const AccessibleCurvePlus& plus,
             const DragLaw& law, double c) {
    if (alpha == 0.0) throw InvalidArgument("delta: alpha must be nonzero");
    const SonicPotential f(law, alpha, c);
    const double drop = f.drop(minus.g_sub(alpha), plus.g_sub(alpha));
    return alpha > 0.0 ? drop : -drop;
}

ParticleRiemannSolution solve_subsonic(const ParticleRiemannProblem& p) {
    validate(p);
    const auto minus = build_minus(p.left, p.v, p.c);
    const auto plus = build_plus(p.right, p.v, p.c);
    return assemble(p, subsonic_root(p, minus, plus), classify(p));
}

ParticleRiemannSolution solve_supersonic_left(const ParticleRiemannProblem& p) {
    validate(p);
    const auto minus = build_minus(p.left, p.v, p.c);
    const auto plus = build_plus(p.right, p.v, p.c);
    const auto d = supersonic_data(p, plus);
    if (!(d.alpha > p.c * p.left.rho)) {
        throw InvalidArgument("solve_supersonic_left: left datum is not supersonic");
    }

    if (d.f_left - d.potential(d.rho_e) >= 1.0) {
        const double rho0 = d.potential.inverse(Branch::Supersonic, d.f_left - 1.0);
        return assemble(p, {p.left, to_fluid({rho0, d.alpha}, p.v), d.alpha, std::nullopt,
                            TraceKind::SupersonicContinuous},
                        CaseLabel::SupersonicLeft);
    }
    if (delta(d.alpha, minus, plus, p.law, p.c) > 1.0) {
        auto residual = jump_residual(d);
        const double theta_max = std::min(1.0, d.f_left);
        const double theta = roots::bisect(residual, 0.0, theta_max);
        return assemble(p, {p.left, to_fluid({d.target, d.alpha}, p.v), d.alpha, theta,
                            TraceKind::SupersonicJump},
                        CaseLabel::SupersonicLeft);
    }
    return assemble(p, subsonic_root(p, minus, plus), CaseLabel::SupersonicLeft);
}

ParticleRiemannSolution solve(const ParticleRiemannProblem& p) {
    switch (classify(p)) {
    case CaseLabel::Subsonic: return solve_subsonic(p);
    case CaseLabel::SupersonicLeft: return solve_supersonic_left(p);
    case CaseLabel::SupersonicRight: break;
    }
    const auto image = solve_supersonic_left(reflect(p));
    const Candidate back = flip(Candidate{image.minus_trace, image.plus_trace, image.alpha_star,
                                          image.theta, image.kind});
    return assemble(p, back, CaseLabel::SupersonicRight);
}

std::vector<ParticleRiemannSolution> enumerate_solutions(const ParticleRiemannProblem& p) {
    validate(p);
    const CaseLabel label = classify(p);
    const auto minus = build_minus(p.left, p.v, p.c);
    const auto plus = build_plus(p.right, p.v, p.c);

    std::vector<Candidate> candidates;
    if (const auto crossing = crossing_alpha(minus, plus)) {
        const double scale = p.c * std::max(p.left.rho, p.right.rho);
        if (std::abs(crossing->alpha0) <= 1e-13 * scale) {
            const FluidState trace = to_fluid({crossing->rho0, 0.0}, p.v);
            candidates.push_back({trace, trace, 0.0, std::nullopt, TraceKind::Stationary});
        }
    }
    scan_delta(p, minus, plus, 1.0, candidates);
    scan_delta(p, minus, plus, -1.0, candidates);
    if (p.left.q - p.v * p.left.rho > p.c * p.left.rho) {
        for (const auto& cand : supersonic_left_candidates(p)) candidates.push_back(cand);
    }
    if (p.right.q - p.v * p.right.rho < -p.c * p.right.rho) {
        for (const auto& cand : supersonic_left_candidates(reflect(p))) {
            candidates.push_back(flip(cand));
        }
    }

    std::vector<ParticleRiemannSolution> out;
    for (const auto& cand : candidates) {
        auto s = assemble(p, cand, label);
        if (!check_solution(p, s).ok()) continue;
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const auto& kept) {
            return trace_distance(kept, s) <= kDedupTolerance;
        });
        if (!duplicate) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.alpha_star < b.alpha_star; });
    return out;
}

SolutionCheck check_solution(const ParticleRiemannProblem& p, const ParticleRiemannSolution& s) {
    SolutionCheck check;
    const GermPair pair{to_particle(s.minus_trace, p.v), to_particle(s.plus_trace, p.v), p.v,
                        s.theta};
    const auto germ = germ_residual(pair, p.law, p.c);
    check.germ_member = germ.member;
    check.germ_relation = germ.relation;
    check.minus_in_V = build_minus(p.left, p.v, p.c).contains(pair.minus);
    check.plus_in_V = build_plus(p.right, p.v, p.c).contains(pair.plus);

    const double tol = speed_tolerance(p);
    check.left_fan_slower = true;
    for (const auto* w : {&s.left_fan.wave1, &s.left_fan.wave2}) {
        if (*w && fastest_speed(**w) > p.v + tol) check.left_fan_slower = false;
    }
    check.right_fan_faster = true;
    for (const auto* w : {&s.right_fan.wave1, &s.right_fan.wave2}) {
        if (*w && slowest_speed(**w) < p.v - tol) check.right_fan_faster = false;
    }
    return check;
}

FluidState sample_solution(const ParticleRiemannSolution& s, double t, double x) {
    if (!(t > 0.0)) throw InvalidArgument("sample_solution: time must be positive");
    const double xi = x / t;
    if (xi < s.v) return sample_fan(s.left_fan, xi);
    if (xi > s.v) return sample_fan(s.right_fan, xi);
    return s.plus_trace;
}

std::vector<SweepRow> sweep_coefficient(const ParticleRiemannProblem& p,
                                        const std::vector<double>& lambdas) {
    if (!p.law.power_params()) throw InvalidArgument("sweep_coefficient: needs a power law");
    std::vector<SweepRow> rows(lambdas.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < lambdas.size(); i = next++) {
            rows[i].lambda = lambdas[i];
            try {
                ParticleRiemannProblem q = p;
                q.law = p.law.with_lambda(lambdas[i]);
                rows[i].solution = solve(q);
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(lambdas.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

} // namespace partriemann
