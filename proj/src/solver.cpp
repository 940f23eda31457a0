#include "hyperfront/solver.hpp"

#include <cmath>

#include "hyperfront/errors.hpp"

namespace hyperfront {

namespace {

/// One explicit upwind step of d_t f + c d_x f = 0 with minmod-limited
/// reconstruction evaluated at the half step (flux-limiter form: second order
/// on smooth data, no new extrema per field for |c|dt/dx <= 1).  `inflow` is
/// the ghost value on the upwind boundary (ghost slope zero); the outflow side
/// copies the edge cell.
Eigen::ArrayXd advect_minmod(const Eigen::ArrayXd& f, double c, double dx, double dt,
                             double inflow) {
    const Eigen::Index n = f.size();
    if (c == 0.0) return f;
    auto value = [&](Eigen::Index i) -> double {
        if (i < 0) return c > 0.0 ? inflow : f[0];
        if (i >= n) return c > 0.0 ? f[n - 1] : inflow;
        return f[i];
    };
    auto slope = [&](Eigen::Index i) -> double {
        if (i < 0 || i >= n) return 0.0;
        return minmod((value(i) - value(i - 1)) / dx, (value(i + 1) - value(i)) / dx);
    };
    Eigen::ArrayXd out(n);
    const double lam = std::abs(c) * dt / dx;
    const double half = (1.0 - lam) * dx / 2.0;  // upwind face value at t + dt/2
    if (c > 0.0) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double wr = value(i) + slope(i) * half;
            const double wl = value(i - 1) + slope(i - 1) * half;
            out[i] = f[i] - lam * (wr - wl);
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double wr = value(i + 1) - slope(i + 1) * half;
            const double wl = value(i) - slope(i) * half;
            out[i] = f[i] + lam * (wr - wl);
        }
    }
    return out;
}

/// Advance `state` through each target time in turn, calling `obs` after
/// landing exactly on it.  `stepper(dt)` performs one step of at most dt.
template <class Stepper, class Obs>
void drive(double& t, double t_end, double snapshot_every, double dt_max,
           Stepper&& stepper, Obs&& obs) {
    obs();
    double target = (snapshot_every > 0.0) ? t + snapshot_every : t_end;
    while (t < t_end) {
        if (target > t_end) target = t_end;
        while (t < target) {
            const double dt = std::min(dt_max, target - t);
            stepper(dt);
            t += dt;
        }
        t = target;  // absorb roundoff so snapshot times are exact
        obs();
        if (target >= t_end) break;
        target += snapshot_every;
    }
}

}  // namespace

Eigen::ArrayXd GridSpec::centers() const {
    Eigen::ArrayXd x(n);
    for (int i = 0; i < n; ++i) x[i] = center(i);
    return x;
}

GridSpec GridSpec::from_dx(double a, double b, double dx_target) {
    if (!(b > a) || !(dx_target > 0.0))
        throw ValidationError("GridSpec: need a < b and dx > 0");
    GridSpec gs;
    gs.a = a;
    gs.b = b;
    gs.n = std::max(1, static_cast<int>(std::llround((b - a) / dx_target)));
    return gs;
}

Eigen::ArrayXd density(const KineticState& s) { return s.f_plus + s.f_minus; }
Eigen::ArrayXd current(const KineticState& s) { return s.f_plus - s.f_minus; }

double minmod(double p, double q) {
    if (p > 0.0 && q > 0.0) return std::min(p, q);
    if (p < 0.0 && q < 0.0) return std::max(p, q);
    return 0.0;
}

KineticState init_step_state(const GridSpec& grid) {
    KineticState s;
    s.grid = grid;
    s.t = 0.0;
    s.f_plus.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) s.f_plus[i] = grid.center(i) < 0.0 ? 1.0 : 0.0;
    s.f_minus = Eigen::ArrayXd::Zero(grid.n);
    return s;
}

KineticState init_front_state(const GridSpec& grid, const FrontProfile& front) {
    const double eps = front.params.epsilon, sp = front.params.speed;
    const Eigen::ArrayXd x = grid.centers();
    const Eigen::Index n = x.size();
    Eigen::ArrayXd rho(n), j(n);
    for (Eigen::Index i = 0; i < n; ++i) rho[i] = front.value_at(x[i]);
    // Homogeneous solutions grow to the right, so marching leftward damps them.
    j[n - 1] = 0.0;
    const auto rhs = [&](double z, double val) {
        return val / (eps * eps * sp) + front.slope_at(z) / (eps * sp);
    };
    for (Eigen::Index i = n - 1; i > 0; --i) {
        const double h = x[i - 1] - x[i];
        const double k1 = rhs(x[i], j[i]);
        const double k2 = rhs(x[i] + 0.5 * h, j[i] + 0.5 * h * k1);
        const double k3 = rhs(x[i] + 0.5 * h, j[i] + 0.5 * h * k2);
        const double k4 = rhs(x[i] + h, j[i] + h * k3);
        j[i - 1] = j[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    KineticState s;
    s.grid = grid;
    s.t = 0.0;
    s.f_plus = (rho + j) / 2.0;
    s.f_minus = (rho - j) / 2.0;
    return s;
}

void step(KineticState& s, double epsilon, const GrowthFunction& g, double dt,
          const StepTerms& terms) {
    const double dx = s.grid.dx();
    if (!(dt > 0.0)) throw ValidationError("step: dt must be positive");
    if (!(dt < epsilon * dx))
        throw CflError("step: CFL requires dt < eps*dx = " + std::to_string(epsilon * dx));
    const double c = 1.0 / epsilon;
    Eigen::ArrayXd fp = terms.transport ? advect_minmod(s.f_plus, c, dx, dt, 0.5)
                                        : s.f_plus;
    Eigen::ArrayXd fm = terms.transport ? advect_minmod(s.f_minus, -c, dx, dt, 0.0)
                                        : s.f_minus;
    if (terms.relaxation) {
        const double r = dt / (2.0 * epsilon * epsilon);
        fp += r * (s.f_minus - s.f_plus);
        fm += r * (s.f_plus - s.f_minus);
    }
    if (terms.reaction) {
        // The two fields avoid new extrema separately, but their sum can leave
        // [0,1] marginally near sharp fronts; clamp before evaluating F.
        const Eigen::ArrayXd growth =
            (s.f_plus + s.f_minus).unaryExpr([&](double rho) {
                return g(std::min(1.0, std::max(0.0, rho)));
            });
        fp += dt / 2.0 * growth;
        fm += dt / 2.0 * growth;
    }
    s.f_plus = std::move(fp);
    s.f_minus = std::move(fm);
    s.t += dt;
}

void run(KineticState& s, double epsilon, const GrowthFunction& g, double t_end,
         const RunOptions& opts, const Observer& observer) {
    if (!(t_end >= s.t)) throw ValidationError("run: t_end precedes the current time");
    if (!(opts.cfl_fraction > 0.0 && opts.cfl_fraction < 1.0))
        throw ValidationError("run: cfl_fraction must lie in (0, 1)");
    const double dt_max = opts.cfl_fraction * epsilon * s.grid.dx();
    double t = s.t;
    drive(
        t, t_end, opts.snapshot_every, dt_max,
        [&](double dt) { step(s, epsilon, g, dt, opts.terms); },
        [&]() {
            s.t = t;
            if (observer) observer(s);
        });
    s.t = t;
}

void linearized_run(const FrontProfile& front, double epsilon, const GrowthFunction& g,
                    LinearState& s, double t_end, const LinearRunOptions& opts,
                    const LinearObserver& observer) {
    if (!(opts.cfl_fraction > 0.0 && opts.cfl_fraction < 1.0))
        throw ValidationError("linearized_run: cfl_fraction must lie in (0, 1)");
    const double speed = front.params.speed;
    const double cp = 1.0 / epsilon - speed;  // characteristic speed of (u+v)/2
    const double cm = -(speed + 1.0 / epsilon);
    const double dx = s.grid.dx();
    const double dt_max = opts.cfl_fraction * dx / (speed + 1.0 / epsilon);

    // Profile and its slope are frozen per cell for the whole run.
    const Eigen::ArrayXd x = s.grid.centers();
    const Eigen::ArrayXd fp_nu =
        x.unaryExpr([&](double xi) { return g.derivative(front.value_at(xi)); });
    const double inv_e2 = 1.0 / (epsilon * epsilon);

    double t = s.t;
    drive(
        t, t_end, opts.snapshot_every, dt_max,
        [&](double dt) {
            Eigen::ArrayXd gp = (s.u + s.v) / 2.0;
            Eigen::ArrayXd gm = (s.u - s.v) / 2.0;
            Eigen::ArrayXd gp_new = advect_minmod(gp, cp, dx, dt, 0.0);
            Eigen::ArrayXd gm_new = advect_minmod(gm, cm, dx, dt, 0.0);
            if (opts.sources) {
                gp_new += dt / 2.0 * (fp_nu * s.u - inv_e2 * s.v);
                gm_new += dt / 2.0 * (fp_nu * s.u + inv_e2 * s.v);
            }
            s.u = gp_new + gm_new;
            s.v = gp_new - gm_new;
        },
        [&]() {
            s.t = t;
            if (observer) observer(s);
        });
    s.t = t;
}

}  // namespace hyperfront
