#pragma once

#include <Eigen/Core>
#include <vector>

#include "hyperfront/profile.hpp"
#include "hyperfront/solver.hpp"

namespace hyperfront {

/// x of the leftmost downward crossing of `level`, linearly interpolated
/// between the bracketing cell centers (a jump inside one cell lands on the
/// cell interface).  Requires rho.front() > level > rho.back(); otherwise
/// NoCrossingError.
double front_position(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho, double level);
double front_position(const KineticState& s, double level);

/// Least-squares front speed from a position time series.
struct SpeedEstimate {
    double level = 0.5;
    std::vector<double> times;      ///< fitted window (early part discarded)
    std::vector<double> positions;
    double speed = 0.0;
    double r_squared = 0.0;
    double t_lo = 0.0, t_hi = 0.0;  ///< fitted window bounds
};

/// Fit x_front = speed * t + c over the trailing part of the series, dropping
/// the first `discard_fraction` of the samples (transient).  Needs at least 5
/// kept samples.
SpeedEstimate estimate_speed(const std::vector<double>& times,
                             const std::vector<double>& positions, double level = 0.5,
                             double discard_fraction = 0.5);

/// Field-vs-profile comparison after aligning the half-level crossings.
struct ProfileComparison {
    double shift = 0.0;   ///< x - shift maps field coordinates onto profile z
    double linf = 0.0;
    double l2 = 0.0;      ///< sqrt(sum |diff|^2 dx) over the overlap
    int overlap_samples = 0;
};

ProfileComparison compare_profile(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho,
                                  const FrontProfile& profile, double level = 0.5);

/// Sharpness of a (near-)discontinuous front in a sampled field.
struct JumpSharpness {
    int width_cells = 0;     ///< cells spanned between 0.9*theta and 0.1*theta
    double back_value = 0.0; ///< rho at the last cell before the drop
    double position = 0.0;   ///< location of the 0.5*theta crossing
};

JumpSharpness jump_sharpness(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho,
                             double theta);

/// Exponential weight phi on `z` by trapezoid integration of weight_slope
/// along the profile, normalized to phi = 0 at z[0].  Critical regime: throws
/// SingularWeightError if the grid reaches the touchdown point, where the
/// slope diverges.
Eigen::ArrayXd weight_profile(const Eigen::ArrayXd& z, const FrontProfile& profile,
                              const GrowthFunction& g);

/// Weighted perturbation energy (1/2) * integral (u^2 + v^2) e^{2 phi} dz.
double lyapunov_energy(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u,
                       const Eigen::ArrayXd& v, const Eigen::ArrayXd& phi);
double lyapunov_energy(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u,
                       const Eigen::ArrayXd& v, const FrontProfile& profile,
                       const GrowthFunction& g);

/// Discriminant of the symmetrized front linearization at height nu;
/// nonpositive at minimal speed (purely dissipative spectrum).  Closed form:
///   -4 (F'(0) - F'(nu)) (1 - eps^4 F'(0) F'(nu)) / (eps^2 (1 - eps^2 F'(0))^2).
double weight_discriminant(double nu, const WaveParameters& wp, const GrowthFunction& g);

/// Local dissipation rate ("spectral gap") of the weighted linearization at
/// height nu: nonnegative, vanishing at nu -> 0 in the parabolic regime;
/// 1 / (eps^2 (1 - eps^2 F'(nu))) at sonic speed in the hyperbolic regime.
double stability_gap(double nu, const WaveParameters& wp, const GrowthFunction& g);

/// Coefficient fields and smallness constants of the twisted energy method
/// for the minimal-speed parabolic front, evaluated on a grid.
struct StabilityWeights {
    Eigen::ArrayXd nu, nu_prime;        ///< profile frozen on the grid
    Eigen::ArrayXd phi;                 ///< weight exponent, phi(z0) = 0
    Eigen::ArrayXd a1, a2, a3, a4, a5, a6, a7, a8;
    double delta = 0.0;        ///< damping constant of the unweighted pair
    double delta_prime = 0.0;  ///< weighted counterpart, < delta
    double delta_dblprime = 0.0;  ///< coupling constant of the combined energy
    double z0 = 0.0;           ///< largest z with min(a6, a7) > 0 on (-inf, z]
    int z0_index = 0;
};

StabilityWeights build_stability_weights(const Eigen::ArrayXd& z,
                                         const FrontProfile& profile,
                                         const GrowthFunction& g);

/// Quadratic energies of a perturbation snapshot pair (time derivative by
/// finite difference over dt), reported at the earlier time.
struct EnergyReport {
    double t = 0.0;
    double lyapunov = 0.0;  ///< weighted L2 energy of u alone (v unavailable here)
    double e1u = 0.0, e2u = 0.0;  ///< unweighted first/second-order energies
    double e1w = 0.0, e2w = 0.0;  ///< weighted counterparts
    double q1u = 0.0, q2u = 0.0;  ///< associated dissipation functionals
    double q1w = 0.0, q2w = 0.0;
    double e_combined = 0.0;  ///< e1w + delta'*e2w + delta''*(e1u + delta*e2u)
    double delta = 0.0, delta_prime = 0.0, delta_dblprime = 0.0;
    double z0 = 0.0;
};

EnergyReport energy_suite(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u_prev,
                          const Eigen::ArrayXd& u_curr, double dt, double t,
                          const StabilityWeights& w, const FrontProfile& profile,
                          const GrowthFunction& g);

/// Convenience overload building the weights internally.
EnergyReport energy_suite(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u_prev,
                          const Eigen::ArrayXd& u_curr, double dt, double t,
                          const FrontProfile& profile, const GrowthFunction& g);

}  // namespace hyperfront
