#pragma once

// Scalar ODE utilities used by the profile constructors: an adaptive
// Dormand-Prince 5(4) integrator that records its accepted nodes, event
// location by step bisection, a fixed-step RK4 marcher for sampling a solution
// on a prescribed uniform grid, and a cubic Hermite table built from nodes
// with analytically known slopes.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hyperfront/errors.hpp"

namespace hyperfront::detail {

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double min_step = 1e-14;
    std::size_t max_steps = 4000000;
};

/// Accepted nodes of a scalar integration, slopes included.
struct OdeNodes {
    std::vector<double> x, y, dy;
};

/// One Dormand-Prince 5(4) step of (signed) size h from (x, y).
/// Returns the 5th-order solution and writes the embedded error estimate.
template <class F>
double dp45_step(F&& f, double x, double y, double h, double& err) {
    const double k1 = f(x, y);
    const double k2 = f(x + h * (1.0 / 5), y + h * (1.0 / 5) * k1);
    const double k3 = f(x + h * (3.0 / 10), y + h * ((3.0 / 40) * k1 + (9.0 / 40) * k2));
    const double k4 = f(x + h * (4.0 / 5),
                        y + h * ((44.0 / 45) * k1 - (56.0 / 15) * k2 + (32.0 / 9) * k3));
    const double k5 =
        f(x + h * (8.0 / 9), y + h * ((19372.0 / 6561) * k1 - (25360.0 / 2187) * k2 +
                                      (64448.0 / 6561) * k3 - (212.0 / 729) * k4));
    const double k6 = f(x + h, y + h * ((9017.0 / 3168) * k1 - (355.0 / 33) * k2 +
                                        (46732.0 / 5247) * k3 + (49.0 / 176) * k4 -
                                        (5103.0 / 18656) * k5));
    const double y5 = y + h * ((35.0 / 384) * k1 + (500.0 / 1113) * k3 + (125.0 / 192) * k4 -
                               (2187.0 / 6784) * k5 + (11.0 / 84) * k6);
    const double k7 = f(x + h, y5);
    const double y4 = y + h * ((5179.0 / 57600) * k1 + (7571.0 / 16695) * k3 +
                               (393.0 / 640) * k4 - (92097.0 / 339200) * k5 +
                               (187.0 / 2100) * k6 + (1.0 / 40) * k7);
    err = std::abs(y5 - y4);
    return y5;
}

/// Integrate y' = f(x,y) from (x0,y0) to x_end (either direction), recording
/// accepted nodes.  `reject` may veto a proposed state (e.g. a phase orbit
/// touching zero); a veto throws NumericalError with `reject_what`.
template <class F, class R>
OdeNodes integrate_to(F&& f, double x0, double y0, double x_end, const OdeOptions& opt,
                      R&& reject, const char* reject_what) {
    OdeNodes nodes;
    const double dir = (x_end >= x0) ? 1.0 : -1.0;
    double x = x0, y = y0;
    nodes.x.push_back(x);
    nodes.y.push_back(y);
    nodes.dy.push_back(f(x, y));
    double h = dir * std::min(opt.max_step, std::abs(x_end - x0) / 16.0 + opt.min_step);
    for (std::size_t n = 0; n < opt.max_steps; ++n) {
        if (dir * (x - x_end) >= 0.0) return nodes;
        if (dir * (x + h - x_end) > 0.0) h = x_end - x;
        double err = 0.0;
        const double y_new = dp45_step(f, x, y, h, err);
        const double tol = opt.abs_tol + opt.rel_tol * std::max(std::abs(y), std::abs(y_new));
        if (err <= tol) {
            x += h;
            y = y_new;
            if (reject(x, y)) throw NumericalError(reject_what);
            nodes.x.push_back(x);
            nodes.y.push_back(y);
            nodes.dy.push_back(f(x, y));
        }
        const double scale =
            (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
        h *= std::min(4.0, std::max(0.1, scale));
        if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
        if (std::abs(h) < opt.min_step) h = dir * opt.min_step;
    }
    throw NumericalError("ODE integration exceeded the step budget");
}

template <class F>
OdeNodes integrate_to(F&& f, double x0, double y0, double x_end, const OdeOptions& opt) {
    return integrate_to(f, x0, y0, x_end, opt, [](double, double) { return false; }, "");
}

/// Integrate y' = f(x,y) forward from (x0,y0) until y crosses `level` downward,
/// then refine the crossing by bisecting the integration step until the x
/// bracket is below `x_tol`.  Returns the crossing (x, y ~= level).
template <class F>
std::pair<double, double> integrate_until_level(F&& f, double x0, double y0, double level,
                                                const OdeOptions& opt, double x_tol = 1e-12) {
    if (y0 <= level) throw ValidationError("level crossing: initial value already below level");
    double x = x0, y = y0;
    double h = std::min(opt.max_step, 1e-2);
    for (std::size_t n = 0; n < opt.max_steps; ++n) {
        double err = 0.0;
        double y_new = dp45_step(f, x, y, h, err);
        const double tol = opt.abs_tol + opt.rel_tol * std::max(std::abs(y), std::abs(y_new));
        if (err > tol && h > opt.min_step) {
            h = std::max(opt.min_step, 0.5 * h);
            continue;
        }
        if (y_new > level) {
            x += h;
            y = y_new;
            const double scale = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
            h = std::min(opt.max_step, h * std::min(4.0, std::max(0.1, scale)));
            continue;
        }
        // Crossed (or landed exactly): shrink the step onto the crossing.
        if (h <= x_tol) return {x + h, y_new};
        h *= 0.5;
    }
    throw NumericalError("level crossing not reached within the step budget");
}

/// March y' = f(x,y) with classical RK4 using `substeps` equal pieces of the
/// (signed) interval h.  Used to hop between adjacent nodes of a uniform grid.
template <class F>
double rk4_march(F&& f, double x, double y, double h, int substeps = 2) {
    const double hs = h / substeps;
    for (int i = 0; i < substeps; ++i) {
        const double k1 = f(x, y);
        const double k2 = f(x + hs / 2, y + hs / 2 * k1);
        const double k3 = f(x + hs / 2, y + hs / 2 * k2);
        const double k4 = f(x + hs, y + hs * k3);
        y += hs / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        x += hs;
    }
    return y;
}

/// Piecewise cubic Hermite interpolant over an ascending node table with
/// exact slopes.  Evaluation outside the table extends linearly from the
/// nearest endpoint using the endpoint slope.
class HermiteTable {
  public:
    HermiteTable() = default;
    HermiteTable(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
        : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
        if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != dy_.size())
            throw ValidationError("HermiteTable: need >= 2 nodes with matching slopes");
    }

    double operator()(double x) const {
        if (x <= x_.front()) return y_.front() + dy_.front() * (x - x_.front());
        if (x >= x_.back()) return y_.back() + dy_.back() * (x - x_.back());
        const std::size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * dy_[i] +
               (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h * dy_[i + 1];
    }

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<double>& slopes() const { return dy_; }

  private:
    std::size_t locate(double x) const {
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> x_, y_, dy_;
};

}  // namespace hyperfront::detail
