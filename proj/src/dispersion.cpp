#include "hyperfront/dispersion.hpp"

#include <cmath>
#include <string>

#include "hyperfront/errors.hpp"

namespace hyperfront {

namespace {

constexpr double kCriticalTol = 1e-12;   // on eps^2 F'(0) - 1
constexpr double kSonicTol = 1e-14;      // on eps^2 s^2 - 1 (quadratic degeneracy)

/// Roots of a x^2 + b x + c = 0 (a != 0), ordered by real part.  The larger
/// magnitude root comes from the cancellation-free half of the formula, the
/// other from the root product.
std::pair<std::complex<double>, std::complex<double>> solve_quadratic(double a, double b,
                                                                      double c) {
    const double disc = b * b - 4.0 * a * c;
    std::complex<double> r1, r2;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(sq, b));
        if (q != 0.0) {
            r1 = q / a;
            r2 = c / q;
        } else {  // b == 0 and c == 0 (or disc == 0 with b == 0)
            r1 = sq / (2.0 * a);
            r2 = -sq / (2.0 * a);
        }
    } else {
        const double re = -b / (2.0 * a);
        const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
        r1 = {re, -im};
        r2 = {re, im};
    }
    if (r1.real() > r2.real()) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Parabolic: return "parabolic";
        case Regime::Critical: return "critical";
        case Regime::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

Regime classify(double epsilon, const GrowthFunction& g, bool force_critical) {
    if (!(epsilon > 0.0)) throw ValidationError("classify: epsilon must be positive");
    if (force_critical) return Regime::Critical;
    const double x = epsilon * epsilon * g.fprime0() - 1.0;
    if (std::abs(x) <= kCriticalTol) return Regime::Critical;
    return x < 0.0 ? Regime::Parabolic : Regime::Hyperbolic;
}

double minimal_speed(double epsilon, const GrowthFunction& g) {
    if (!(epsilon > 0.0)) throw ValidationError("minimal_speed: epsilon must be positive");
    const double f0 = g.fprime0();
    if (classify(epsilon, g) == Regime::Parabolic)
        return 2.0 * std::sqrt(f0) / (1.0 + epsilon * epsilon * f0);
    return 1.0 / epsilon;
}

double jump_height(double epsilon, const GrowthFunction& g) {
    switch (classify(epsilon, g)) {
        case Regime::Parabolic:
            throw RegimeError("jump_height: parabolic fronts are smooth (no jump)");
        case Regime::Critical:
            return 0.0;
        case Regime::Hyperbolic:
            break;
    }
    // Unique interior root of G(rho) = eps^2 F(rho) - rho: G' > 0 at 0 in the
    // hyperbolic regime and G(1) = -1 < 0, so a sign change brackets it.
    const double e2 = epsilon * epsilon;
    auto G = [&](double rho) { return e2 * g(rho) - rho; };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    if (!(G(lo) > 0.0 && G(hi) < 0.0))
        throw NumericalError("jump_height: bracket failed to straddle the root");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = G(mid);
        if (std::abs(gm) < 1e-13) return mid;
        (gm > 0.0 ? lo : hi) = mid;
    }
    throw NumericalError("jump_height: bisection did not reach |G| < 1e-13");
}

std::pair<std::complex<double>, std::complex<double>>
char_roots_zero(double epsilon, double speed, const GrowthFunction& g) {
    const double a = epsilon * epsilon * speed * speed - 1.0;
    if (std::abs(a) < kSonicTol)
        throw DegenerateQuadraticError(
            "char_roots_zero: quadratic degenerates at sonic speed");
    const double f0 = g.fprime0();
    return solve_quadratic(a, (1.0 - epsilon * epsilon * f0) * speed, -f0);
}

std::pair<std::complex<double>, std::complex<double>>
char_roots_one(double epsilon, double speed, const GrowthFunction& g) {
    const double a = epsilon * epsilon * speed * speed - 1.0;
    if (std::abs(a) < kSonicTol)
        throw DegenerateQuadraticError(
            "char_roots_one: quadratic degenerates at sonic speed");
    const double f1 = g.fprime1();
    return solve_quadratic(a, -(1.0 - epsilon * epsilon * f1) * speed, -f1);
}

double char_discriminant_zero(double epsilon, double speed, const GrowthFunction& g) {
    const double f0 = g.fprime0();
    const double m = (epsilon * epsilon * f0 + 1.0) * speed;
    return m * m - 4.0 * f0;
}

WaveParameters WaveParameters::make(double epsilon, double speed, const GrowthFunction& g,
                                    bool force_critical) {
    if (!(epsilon > 0.0 && speed > 0.0))
        throw ValidationError("WaveParameters: epsilon and speed must be positive");
    WaveParameters wp;
    wp.epsilon = epsilon;
    wp.speed = speed;
    wp.regime = classify(epsilon, g, force_critical);
    wp.min_speed = minimal_speed(epsilon, g);
    if (wp.regime == Regime::Hyperbolic) wp.jump_height = hyperfront::jump_height(epsilon, g);

    const double e2 = epsilon * epsilon;
    const double a = e2 * speed * speed - 1.0;
    const bool sonic = std::abs(a) < kSonicTol;

    // Trailing tail: rate of the generic approach to 1 (z -> -inf).
    if (sonic) {
        wp.relax_rate = -epsilon * g.fprime1() / (1.0 - e2 * g.fprime1());
    } else {
        const auto [r1, r2] = char_roots_one(epsilon, speed, g);
        // Real roots always; keep the smaller positive one (the generic rate).
        const double lo = r1.real(), hi = r2.real();
        wp.relax_rate = lo > 0.0 ? lo : hi;
    }

    // Leading tail: decay rate toward 0 (z -> +inf) when it is exponential.
    if (sonic) {
        if (wp.regime == Regime::Parabolic)
            wp.decay_rate = epsilon * g.fprime0() / (1.0 - e2 * g.fprime0());
    } else if (a < 0.0) {  // subsonic
        if (char_discriminant_zero(epsilon, speed, g) >= 0.0) {
            const auto [r1, r2] = char_roots_zero(epsilon, speed, g);
            wp.decay_rate = r1.real();  // smaller root: generic decay
        }
    } else {  // supersonic: one positive root (the outgoing direction at 0)
        const auto [r1, r2] = char_roots_zero(epsilon, speed, g);
        wp.decay_rate = r2.real();
        wp.super_slope = e2 * speed / a;
    }
    return wp;
}

double weight_slope(double nu, const WaveParameters& wp, const GrowthFunction& g) {
    const double s = wp.speed;
    if (std::abs(s - wp.min_speed) > 1e-9 * std::max(1.0, wp.min_speed))
        throw ValidationError("weight_slope: defined at the minimal speed only");
    const double e2 = wp.epsilon * wp.epsilon;
    if (wp.regime == Regime::Parabolic) {
        return s * (1.0 - e2 * g.derivative(nu)) / (2.0 * (1.0 - e2 * s * s));
    }
    const double denom = 1.0 - e2 * g.derivative(nu);
    if (denom <= 1e-12)
        throw SingularWeightError("weight_slope: singular at the front edge (nu -> 0)");
    return wp.epsilon * g.derivative(nu) / denom;
}

}  // namespace hyperfront
