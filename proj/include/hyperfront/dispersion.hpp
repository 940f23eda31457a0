#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "hyperfront/growth.hpp"

namespace hyperfront {

/// Propagation regime of the damped-wave reaction model, decided by the size
/// of eps^2 * F'(0) relative to 1.
enum class Regime { Parabolic, Critical, Hyperbolic };

const char* to_string(Regime r);

/// Classify by eps^2 * F'(0) with a 1e-12 tolerance around the critical value.
/// `force_critical` lets callers pin the exact critical case when eps was
/// derived symbolically as 1/sqrt(F'(0)).
Regime classify(double epsilon, const GrowthFunction& g, bool force_critical = false);

/// Minimal front speed: 2*sqrt(F'(0)) / (1 + eps^2*F'(0)) in the parabolic
/// regime, the free-streaming speed 1/eps otherwise.  Always <= 1/eps.
double minimal_speed(double epsilon, const GrowthFunction& g);

/// Height of the front discontinuity: the unique root of eps^2*F(rho) = rho in
/// (0,1) for the hyperbolic regime, 0 in the critical regime.  Throws
/// RegimeError in the parabolic regime (no jump exists).
double jump_height(double epsilon, const GrowthFunction& g);

/// Derived quantities for a front at speed `speed`.
struct WaveParameters {
    double epsilon = 0.0;
    double speed = 0.0;
    Regime regime = Regime::Parabolic;
    double min_speed = 0.0;
    /// Exponential decay rate of the leading tail (smallest positive root of
    /// the linearization about 0).  Absent when the tail is not exponential:
    /// complex roots (speed below minimal) or a front hitting 0 at finite z.
    std::optional<double> decay_rate;
    /// Relaxation rate of the trailing tail toward 1 (positive root of the
    /// linearization about 1).
    double relax_rate = 0.0;
    /// Front jump height; 0 outside the hyperbolic regime.
    double jump_height = 0.0;
    /// Supersolution slope k = eps^2*s/(eps^2*s^2 - 1) bounding the phase
    /// orbit by k*F(v); set only for supersonic speeds.
    std::optional<double> super_slope;

    /// Populate every derived quantity for (epsilon, speed).
    static WaveParameters make(double epsilon, double speed, const GrowthFunction& g,
                               bool force_critical = false);
};

/// Roots of the characteristic polynomial of the linearization about the
/// invaded state 0:
///   (eps^2 s^2 - 1) L^2 + (1 - eps^2 F'(0)) s L - F'(0) = 0,
/// ordered by real part, computed with the cancellation-safe quadratic
/// formula.  Throws DegenerateQuadraticError when |eps^2 s^2 - 1| < 1e-14.
std::pair<std::complex<double>, std::complex<double>>
char_roots_zero(double epsilon, double speed, const GrowthFunction& g);

/// Same for the settled state 1:
///   (eps^2 s^2 - 1) L^2 - (1 - eps^2 F'(1)) s L - F'(1) = 0.
/// The discriminant is positive for every admissible speed: one root of each
/// sign, ordered by real part.
std::pair<std::complex<double>, std::complex<double>>
char_roots_one(double epsilon, double speed, const GrowthFunction& g);

/// Discriminant of the polynomial behind char_roots_zero, in the reduced form
/// (eps^2 F'(0) + 1)^2 s^2 - 4 F'(0): negative exactly for speeds below the
/// parabolic minimal speed.
double char_discriminant_zero(double epsilon, double speed, const GrowthFunction& g);

/// Slope of the exponential weight that symmetrizes the front linearization,
/// evaluated at profile height nu.  Requires speed == minimal_speed (1e-9
/// relative).  Parabolic:
///   s (1 - eps^2 F'(nu)) / (2 (1 - eps^2 s^2)),
/// critical and hyperbolic:
///   eps F'(nu) / (1 - eps^2 F'(nu)),
/// which diverges as nu -> 0 in the critical regime (SingularWeightError).
double weight_slope(double nu, const WaveParameters& wp, const GrowthFunction& g);

}  // namespace hyperfront
