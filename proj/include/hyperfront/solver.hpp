#pragma once

#include <Eigen/Core>
#include <functional>

#include "hyperfront/growth.hpp"
#include "hyperfront/profile.hpp"

namespace hyperfront {

/// Uniform cell-centered grid on [a, b] with n cells.
struct GridSpec {
    double a = 0.0;
    double b = 1.0;
    int n = 1;

    double dx() const { return (b - a) / n; }
    double center(int i) const { return a + (i + 0.5) * dx(); }
    Eigen::ArrayXd centers() const;
    /// Grid with spacing as close to dx_target as an integer cell count allows.
    static GridSpec from_dx(double a, double b, double dx_target);
};

/// Kinetic pair (f+, f-) of right- and left-movers at speeds +-1/eps; the
/// macroscopic density is f+ + f- and the rescaled flux f+ - f-.
struct KineticState {
    GridSpec grid;
    double t = 0.0;
    Eigen::ArrayXd f_plus;
    Eigen::ArrayXd f_minus;
};

Eigen::ArrayXd density(const KineticState& s);
Eigen::ArrayXd current(const KineticState& s);

/// Slope limiter: 0 on sign mismatch (zeros count as mismatch), otherwise the
/// smaller magnitude with the common sign.
double minmod(double p, double q);

/// Riemann initial data: f+ = 1 on cell centers x < 0, else 0; f- = 0.
KineticState init_step_state(const GridSpec& grid);

/// Kinetic data carrying the travelling wave: density sampled from the
/// profile, current from the flux balance j' = j/(eps^2 s) + nu'/(eps s)
/// integrated right-to-left (the decaying direction) with j(+inf) = 0.
KineticState init_front_state(const GridSpec& grid, const FrontProfile& front);

/// Individual terms of the update, separable for convergence tests.
struct StepTerms {
    bool transport = true;
    bool relaxation = true;
    bool reaction = true;
    static StepTerms transport_only() { return {true, false, false}; }
};

/// One forward-Euler step of the limited upwind scheme.  Boundary conditions:
/// inflow f+(a) = 1/2 and f-(b) = 0, outflow by zero-slope copy.  Throws
/// CflError unless dt < eps * dx.
void step(KineticState& s, double epsilon, const GrowthFunction& g, double dt,
          const StepTerms& terms = {});

struct RunOptions {
    double cfl_fraction = 0.9;
    /// Observer cadence; 0 = initial and final state only.  Steps land exactly
    /// on snapshot times, so identical configs reproduce identical series.
    double snapshot_every = 0.0;
    StepTerms terms = {};
};

using Observer = std::function<void(const KineticState&)>;

/// Advance to t_end with dt = cfl_fraction * eps * dx (clipped to land on
/// snapshot times and t_end).  The observer fires at t = start, every
/// snapshot_every, and t_end.
void run(KineticState& s, double epsilon, const GrowthFunction& g, double t_end,
         const RunOptions& opts = {}, const Observer& observer = {});

/// Perturbation pair (u, v) in the frame moving at the front speed; u is the
/// density perturbation, v the flux perturbation.
struct LinearState {
    GridSpec grid;
    double t = 0.0;
    Eigen::ArrayXd u;
    Eigen::ArrayXd v;
};

struct LinearRunOptions {
    double cfl_fraction = 0.9;
    double snapshot_every = 0.0;
    /// Switch off the zero-order coupling terms to expose pure transport of
    /// the characteristic variables (u +- v)/2 at speeds -s +- 1/eps.
    bool sources = true;
};

using LinearObserver = std::function<void(const LinearState&)>;

/// Evolve the linearization about `front` in the co-moving frame, with the
/// profile frozen per cell.  Characteristic variables (u +- v)/2 are advected
/// by the same limited upwind scheme with zero inflow; CFL requires
/// dt < dx / (s + 1/eps).
void linearized_run(const FrontProfile& front, double epsilon, const GrowthFunction& g,
                    LinearState& s, double t_end, const LinearRunOptions& opts = {},
                    const LinearObserver& observer = {});

}  // namespace hyperfront
