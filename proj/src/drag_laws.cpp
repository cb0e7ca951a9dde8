#include "partriemann/drag_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "partriemann/errors.hpp"
#include "partriemann/roots.hpp"

namespace partriemann {

namespace {

// Bisection depth of the adaptive quadrature. Near-zero integrals (limits
// close to the sonic density) never meet a relative tolerance, so the depth
// bounds the cost.
constexpr unsigned kMaxDepth = 8;

// expm1(p L) / p, with the p -> 0 limit.
double scaled_expm1(double p, double log_ratio) {
    if (std::abs(p) < 1e-300) return log_ratio;
    return std::expm1(p * log_ratio) / p;
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument(what);
}

} // namespace

DragLaw::DragLaw(std::string name, Evaluator evaluator)
    : name_(std::move(name)), evaluator_(std::move(evaluator)) {
    if (!evaluator_) throw InvalidArgument("DragLaw: empty evaluator");
}

DragLaw DragLaw::power(double lambda, double n, double m) {
    require_positive(lambda, "power law: lambda must be positive");
    if (!std::isfinite(n) || !std::isfinite(m)) {
        throw InvalidArgument("power law: exponents must be finite");
    }
    DragLaw law("power(lambda=" + std::to_string(lambda) + ", n=" + std::to_string(n) +
                    ", m=" + std::to_string(m) + ")",
                [lambda, n, m](double rho, double alpha) {
                    if (alpha == 0.0) return 0.0;
                    return lambda * std::pow(rho, n - m) *
                           std::pow(std::abs(alpha), m - 1.0) * alpha;
                });
    law.power_ = PowerLawParams{lambda, n, m};
    return law;
}

double DragLaw::operator()(double rho, double alpha) const {
    if (!(rho > 0.0)) throw InvalidArgument("drag law: density must be positive");
    return evaluator_(rho, alpha);
}

DragLaw DragLaw::reflected() const {
    if (power_) return *this; // odd in alpha
    DragLaw law("reflected " + name_,
                [inner = evaluator_](double rho, double alpha) { return -inner(rho, -alpha); });
    return law;
}

DragLaw DragLaw::with_lambda(double lambda) const {
    if (!power_) throw InvalidArgument("with_lambda: not a power law");
    return power(lambda, power_->n, power_->m);
}

double evaluate(const DragLaw& law, double rho, double alpha) { return law(rho, alpha); }

double mirror(double alpha, double c, double rho) {
    require_positive(rho, "mirror: density must be positive");
    return alpha * alpha / (c * c * rho);
}

SonicPotential::SonicPotential(DragLaw law, double alpha, double c)
    : law_(std::move(law)), alpha_(alpha), c_(c) {
    if (alpha == 0.0 || !std::isfinite(alpha)) {
        throw InvalidArgument("potential: alpha must be nonzero");
    }
    require_positive(c, "potential: sound speed must be positive");
    sonic_ = std::abs(alpha) / c;
}

double SonicPotential::derivative(double rho) const {
    require_positive(rho, "potential: density must be positive");
    return (c_ * c_ - alpha_ * alpha_ / (rho * rho)) / std::abs(law_(rho, alpha_));
}

double SonicPotential::operator()(double rho) const {
    require_positive(rho, "potential: density must be positive");
    if (rho == sonic_) return 0.0;
    const auto& p = law_.power_params();
    if (!p) return by_quadrature(rho);

    // (c^2 r^k - alpha^2 r^(k-2)) / (lambda |alpha|^m), k = m - n, integrated
    // from the sonic density in the variable log(r / sonic).
    const double k = p->m - p->n;
    const double log_ratio = std::log(rho / sonic_);
    const double bracket = scaled_expm1(k + 1.0, log_ratio) - scaled_expm1(k - 1.0, log_ratio);
    const double scale = c_ * c_ * std::pow(sonic_, k + 1.0) /
                         (p->lambda * std::pow(std::abs(alpha_), p->m));
    return scale * bracket;
}

double SonicPotential::drop(double a, double b) const {
    require_positive(a, "potential: density must be positive");
    require_positive(b, "potential: density must be positive");
    if (a == b) return 0.0;
    const auto& p = law_.power_params();
    if (p) {
        const double k = p->m - p->n;
        const double log_b = std::log(b / sonic_);
        const double log_ab = std::log(a / b);
        const double bracket = std::exp((k + 1.0) * log_b) * scaled_expm1(k + 1.0, log_ab) -
                               std::exp((k - 1.0) * log_b) * scaled_expm1(k - 1.0, log_ab);
        const double scale = c_ * c_ * std::pow(sonic_, k + 1.0) /
                             (p->lambda * std::pow(std::abs(alpha_), p->m));
        return scale * bracket;
    }
    auto integrand = [this](double s) {
        const double r = std::exp(s);
        return (c_ * c_ * r - alpha_ * alpha_ / r) / std::abs(law_(r, alpha_));
    };
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, std::log(b), std::log(a), kMaxDepth, 1e-12, &error);
}

double SonicPotential::by_quadrature(double rho) const {
    require_positive(rho, "potential: density must be positive");
    if (rho == sonic_) return 0.0;
    // Integrate in s = log r: dr = r ds.
    auto integrand = [this](double s) {
        const double r = std::exp(s);
        return (c_ * c_ * r - alpha_ * alpha_ / r) / std::abs(law_(r, alpha_));
    };
    const double a = std::log(sonic_);
    const double b = std::log(rho);
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, kMaxDepth,
                                                                         1e-12, &error);
}

double SonicPotential::inverse(Branch branch, double y) const {
    if (std::isnan(y)) throw InvalidArgument("potential_inverse: NaN target");
    if (y <= 0.0) {
        if (y < -1e-12) throw InvalidArgument("potential_inverse: target must be >= 0");
        return sonic_;
    }
    auto residual = [&](double rho) { return (*this)(rho) - y; };

    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
    if (branch == Branch::Supersonic) {
        lo = 1e-12 * sonic_;
        hi = sonic_;
        f_lo = residual(lo);
        f_hi = -y;
        if (!(f_lo >= 0.0)) {
            throw NoRootError("potential_inverse: target above supersonic range", lo, hi, f_lo,
                              f_hi);
        }
    } else {
        lo = sonic_;
        f_lo = -y;
        hi = 2.0 * sonic_;
        f_hi = residual(hi);
        int doublings = 1;
        while (!(f_hi >= 0.0)) {
            if (++doublings > 2000 || !std::isfinite(hi)) {
                throw NoRootError("potential_inverse: target above subsonic range", lo, hi,
                                  f_lo, f_hi);
            }
            lo = hi;
            f_lo = f_hi;
            hi *= 2.0;
            f_hi = residual(hi);
        }
    }

    double rho = roots::bisect(residual, lo, hi, f_lo, f_hi, 0.0, roots::Midpoint::Geometric);
    for (int it = 0; it < 3; ++it) {
        const double f = residual(rho);
        const double df = derivative(rho);
        const double next = rho - f / df;
        if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) break;
        if (std::abs(residual(next)) >= std::abs(f)) break;
        rho = next;
    }
    return rho;
}

double potential(const DragLaw& law, double alpha, double c, double rho) {
    return SonicPotential(law, alpha, c)(rho);
}

double potential_inverse(const DragLaw& law, double alpha, double c, Branch branch,
                         double y) {
    return SonicPotential(law, alpha, c).inverse(branch, y);
}

HypothesisReport check_hypotheses(const DragLaw& law, const HypothesisGrid& grid) {
    if (grid.rho_points < 2 || grid.alpha_points < 2 || !(grid.rho_min > 0.0) ||
        !(grid.rho_max > grid.rho_min) || !(grid.alpha_max > 0.0) || !(grid.c > 0.0)) {
        throw InvalidArgument("check_hypotheses: degenerate grid");
    }
    std::vector<double> rhos(grid.rho_points);
    const double log_step =
        std::log(grid.rho_max / grid.rho_min) / static_cast<double>(grid.rho_points - 1);
    for (int i = 0; i < grid.rho_points; ++i) rhos[i] = grid.rho_min * std::exp(i * log_step);
    std::vector<double> alphas(grid.alpha_points);
    const double alpha_step = 2.0 * grid.alpha_max / static_cast<double>(grid.alpha_points - 1);
    for (int j = 0; j < grid.alpha_points; ++j) alphas[j] = -grid.alpha_max + j * alpha_step;

    std::vector<std::vector<double>> d(rhos.size(), std::vector<double>(alphas.size()));
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        for (std::size_t j = 0; j < alphas.size(); ++j) d[i][j] = law(rhos[i], alphas[j]);
    }

    HypothesisReport report;
    report.sign_ok = true;
    report.increasing_in_alpha = true;
    report.abs_decreasing_in_rho = true;
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        if (law(rhos[i], 0.0) != 0.0) report.sign_ok = false;
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const double a = alphas[j];
            if (a != 0.0 && !((a > 0.0) ? d[i][j] > 0.0 : d[i][j] < 0.0)) report.sign_ok = false;
            if (j + 1 < alphas.size() && !(d[i][j + 1] > d[i][j])) {
                report.increasing_in_alpha = false;
            }
            if (i + 1 < rhos.size()) {
                const double now = std::abs(d[i][j]);
                const double next = std::abs(d[i + 1][j]);
                if (next > now * (1.0 + 1e-12)) report.abs_decreasing_in_rho = false;
            }
        }
    }

    report.croissance_ok = true;
    for (double a : alphas) {
        if (a == 0.0) continue;
        const SonicPotential f(law, a, grid.c);
        const double sonic = f.sonic_density();
        for (std::size_t i = 0; i + 1 < rhos.size() && rhos[i + 1] <= sonic; ++i) {
            const double r1 = rhos[i];
            const double r2 = rhos[i + 1];
            const double lhs = f(r1) - f(r2);
            const double rhs = f(mirror(a, grid.c, r1)) - f(mirror(a, grid.c, r2));
            const double tol = 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs));
            if (lhs > rhs + tol) {
                report.croissance_ok = false;
                break;
            }
        }
        if (!report.croissance_ok) break;
    }
    return report;
}

} // namespace partriemann
