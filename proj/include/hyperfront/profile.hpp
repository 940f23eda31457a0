#pragma once

#include <Eigen/Core>
#include <optional>

#include "hyperfront/dispersion.hpp"
#include "hyperfront/growth.hpp"

namespace hyperfront {

enum class FrontProfileKind {
    SmoothParabolic,          ///< subsonic speed in the parabolic regime
    WeakSonic,                ///< sonic speed, parabolic regime (still smooth)
    DiscontinuousHyperbolic,  ///< sonic speed, hyperbolic regime (jump to 0)
    ContinuousCritical,       ///< sonic speed, critical regime (corner at 0)
    SmoothSupersonic          ///< supersonic speed, any regime
};

const char* to_string(FrontProfileKind k);

enum class ShiftConvention {
    HalfLevelAtOrigin,  ///< nu(0) = 1/2
    JumpAtOrigin        ///< the jump (or touchdown) sits at z = 0
};

struct ProfileOptions {
    /// Spacing of the uniform output grid.
    double dz = 2e-4;
    /// Truncation of the infinite line: the grid stops once nu is within
    /// tol_end of its limits 0 and 1.
    double tol_end = 1e-6;
    /// Offset from the rest states at which phase-plane integrations start on
    /// the local eigendirection.
    double delta0 = 1e-6;
    /// Enforced bound on the sampled travelling-wave residual (central
    /// differences); construction fails if the samples are worse.
    double residual_tol = 1e-6;
    /// Grid extension ahead of a jump or touchdown point.
    double pad_right = 4.0;
    /// Local error tolerances of the adaptive integrations.
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

/// A travelling front nu(z), monotone from 1 (z -> -inf) to 0, sampled on a
/// uniform grid.  Shifted per `shift`; discontinuous kinds are extended by 0
/// ahead of the jump.
struct FrontProfile {
    FrontProfileKind kind = FrontProfileKind::SmoothParabolic;
    WaveParameters params;
    Eigen::ArrayXd z;         ///< strictly increasing, uniform spacing
    Eigen::ArrayXd nu;        ///< values in [0, 1], nonincreasing
    Eigen::ArrayXd nu_prime;  ///< slope from the profile ODE (not differenced)
    std::optional<double> jump_location;  ///< discontinuous kind only
    ShiftConvention shift = ShiftConvention::HalfLevelAtOrigin;

    double dz() const { return z.size() > 1 ? z[1] - z[0] : 0.0; }
    /// Linear interpolation; outside the grid the profile continues its
    /// exponential approach to the rest states, so truncation never leaves a
    /// residual carpet ahead (exact 0 beyond a jump or touchdown).
    double value_at(double zq) const;
    double slope_at(double zq) const;
};

/// Adaptive nodes of the phase-plane orbit p(height) traced by a constructor,
/// with p = -nu' >= 0 (supersonic: p = +V' of the reversed wave).
struct PhaseOrbit {
    Eigen::ArrayXd height;  ///< ascending in (0, 1)
    Eigen::ArrayXd p;
};

/// Smooth subsonic front in the parabolic regime, minimal speed included.
/// Follows the phase-plane orbit from the settled state down to the invaded
/// state, then samples nu(z) on a uniform grid with nu(0) = 1/2.
/// Throws NoMonotoneFrontError (carrying the discriminant) for speeds below
/// minimal, RegimeError outside the parabolic regime, ValidationError for
/// sonic-or-faster speeds.
FrontProfile build_parabolic(double epsilon, double speed, const GrowthFunction& g,
                             const ProfileOptions& opts = {});

/// Sonic front in the parabolic regime: first-order profile ODE
///   nu' = -eps F(nu) / (1 - eps^2 F'(nu)),
/// smooth, nu(0) = 1/2.
FrontProfile build_weak_sonic(double epsilon, const GrowthFunction& g,
                              const ProfileOptions& opts = {});

/// Sonic front in the hyperbolic or critical regime: first-order ODE
///   nu' = eps F(nu) / (eps^2 F'(nu) - 1)
/// integrated until nu reaches the jump height, jump placed at z = 0, zero
/// ahead.  Critical regime: jump height 0, the front touches down with slope
/// F'(0)/(eps F''(0)) and the result is continuous with a corner.
FrontProfile build_hyperbolic(double epsilon, const GrowthFunction& g,
                              const ProfileOptions& opts = {});

struct SupersonicFront {
    FrontProfile profile;
    PhaseOrbit orbit;
};

/// Supersonic front (speed > 1/eps): phase-plane orbit of the reversed wave
/// from the invaded state up to the settled state, kept inside the trapping
/// region 0 <= p <= min(decay_rate * v, super_slope * F(v)); violation throws
/// NumericalError.  Result shifted to nu(0) = 1/2.
SupersonicFront build_supersonic(double epsilon, double speed, const GrowthFunction& g,
                                 const ProfileOptions& opts = {});

struct ResidualReport {
    double max_abs = 0.0;       ///< worst travelling-wave residual, interior samples
    int interior_samples = 0;
    bool coarse_grid = false;   ///< fewer than 100 interior samples
};

/// Travelling-wave residual of the sampled profile under central differences:
///   (eps^2 s^2 - 1) nu'' - (1 - eps^2 F'(nu)) s nu' - F(nu).
/// Discontinuous or cornered kinds are evaluated only on the smooth piece
/// (more than two spacings behind the jump).
ResidualReport residual(const FrontProfile& profile, const GrowthFunction& g);

}  // namespace hyperfront
