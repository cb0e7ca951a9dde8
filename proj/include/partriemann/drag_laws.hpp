#pragma once

#include <functional>
#include <optional>
#include <string>

namespace partriemann {

/// Parameters of D = lambda * rho^(n - m) * |alpha|^(m - 1) * alpha.
struct PowerLawParams {
    double lambda;
    double n;
    double m;
};

/// Drag force D(rho, alpha) exerted by the fluid on the particle, where
/// alpha = rho (u - v) is the relative momentum. D must carry the sign of
/// alpha and vanish at alpha = 0.
class DragLaw {
public:
    using Evaluator = std::function<double(double rho, double alpha)>;

    DragLaw(std::string name, Evaluator evaluator);

    static DragLaw power(double lambda, double n, double m);
    static DragLaw linear(double lambda) { return power(lambda, 1.0, 1.0); }

    /// Throws InvalidArgument when rho <= 0.
    double operator()(double rho, double alpha) const;

    const std::string& name() const { return name_; }
    const std::optional<PowerLawParams>& power_params() const { return power_; }

    /// Image of the law under x -> -x: D'(rho, alpha) = -D(rho, -alpha).
    DragLaw reflected() const;

    /// Same power law with a different coefficient. Throws for other laws.
    DragLaw with_lambda(double lambda) const;

private:
    std::string name_;
    Evaluator evaluator_;
    std::optional<PowerLawParams> power_;
};

double evaluate(const DragLaw& law, double rho, double alpha);

enum class Branch { Subsonic, Supersonic };

/// F_alpha(rho): integral of (c^2 - alpha^2 / r^2) / |D(r, alpha)| from the
/// sonic density |alpha| / c to rho. Decreasing below the sonic density,
/// increasing above, zero at it. Its drop across the particle is one.
class SonicPotential {
public:
    SonicPotential(DragLaw law, double alpha, double c);

    double operator()(double rho) const;
    /// dF/drho.
    double derivative(double rho) const;
    /// F(a) - F(b), integrated directly between the two densities so close
    /// densities keep their relative accuracy when F itself is large.
    double drop(double a, double b) const;
    double sonic_density() const { return sonic_; }
    double alpha() const { return alpha_; }
    double c() const { return c_; }
    const DragLaw& law() const { return law_; }

    /// Unique rho on `branch` with F(rho) = y. Throws NoRootError when y is
    /// not attained on the search bracket.
    double inverse(Branch branch, double y) const;

    /// Adaptive Gauss-Kronrod evaluation, used for non-power laws and as a
    /// cross-check of the closed form.
    double by_quadrature(double rho) const;

private:
    DragLaw law_;
    double alpha_;
    double c_;
    double sonic_;
};

double potential(const DragLaw& law, double alpha, double c, double rho);
double potential_inverse(const DragLaw& law, double alpha, double c,
                         Branch branch, double y);

/// Density joined to rho by a discontinuity travelling with the particle.
double mirror(double alpha, double c, double rho);

struct HypothesisGrid {
    double rho_min = 1e-2;
    double rho_max = 1e2;
    int rho_points = 64;    ///< log-spaced
    double alpha_max = 10.0;
    int alpha_points = 64;  ///< linear in [-alpha_max, alpha_max]
    double c = 1.0;
};

struct HypothesisReport {
    bool sign_ok = false;
    bool increasing_in_alpha = false;
    bool abs_decreasing_in_rho = false;
    bool croissance_ok = false;

    bool all() const {
        return sign_ok && increasing_in_alpha && abs_decreasing_in_rho && croissance_ok;
    }
};

/// Sampled test of the structural hypotheses that guarantee a unique
/// solution: sign and monotonicity of D, and the mirror inequality
/// F(r1) - F(r2) <= F(~r1) - F(~r2) for r1 < r2 <= |alpha| / c.
HypothesisReport check_hypotheses(const DragLaw& law, const HypothesisGrid& grid = {});

} // namespace partriemann
