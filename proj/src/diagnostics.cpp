#include "hyperfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperfront/errors.hpp"

namespace hyperfront {

namespace {

double trapezoid(const Eigen::ArrayXd& z, const Eigen::ArrayXd& f) {
    const Eigen::Index n = z.size();
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        acc += (z[i + 1] - z[i]) * 0.5 * (f[i] + f[i + 1]);
    return acc;
}

/// Central differences, one-sided at the ends.
Eigen::ArrayXd d_dz(const Eigen::ArrayXd& z, const Eigen::ArrayXd& f) {
    const Eigen::Index n = z.size();
    Eigen::ArrayXd out(n);
    out[0] = (f[1] - f[0]) / (z[1] - z[0]);
    out[n - 1] = (f[n - 1] - f[n - 2]) / (z[n - 1] - z[n - 2]);
    for (Eigen::Index i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (z[i + 1] - z[i - 1]);
    return out;
}

double third_derivative(const GrowthFunction& g, double rho) {
    if (g.kind() == GrowthFunction::Kind::Logistic) return 0.0;
    const double h = 1e-5;
    const double lo = std::max(0.0, rho - h), hi = std::min(1.0, rho + h);
    return (g.second_derivative(hi) - g.second_derivative(lo)) / (hi - lo);
}

}  // namespace

double front_position(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho, double level) {
    const Eigen::Index n = x.size();
    if (n < 2 || rho.size() != n)
        throw ValidationError("front_position: need matching arrays with >= 2 samples");
    if (!(rho[0] > level && rho[n - 1] < level))
        throw NoCrossingError("front_position: level " + std::to_string(level) +
                              " is not crossed downward");
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (rho[i] >= level && rho[i + 1] < level) {
            const double t = (rho[i] - level) / (rho[i] - rho[i + 1]);
            return x[i] + t * (x[i + 1] - x[i]);
        }
    }
    throw NoCrossingError("front_position: no downward crossing found");
}

double front_position(const KineticState& s, double level) {
    return front_position(s.grid.centers(), density(s), level);
}

SpeedEstimate estimate_speed(const std::vector<double>& times,
                             const std::vector<double>& positions, double level,
                             double discard_fraction) {
    if (times.size() != positions.size())
        throw ValidationError("estimate_speed: series length mismatch");
    if (!(discard_fraction >= 0.0 && discard_fraction < 1.0))
        throw ValidationError("estimate_speed: discard_fraction must lie in [0, 1)");
    const std::size_t n = times.size();
    const std::size_t first = static_cast<std::size_t>(std::ceil(discard_fraction * n));
    if (n - first < 5)
        throw ValidationError("estimate_speed: need at least 5 samples after the discard");
    SpeedEstimate est;
    est.level = level;
    est.times.assign(times.begin() + first, times.end());
    est.positions.assign(positions.begin() + first, positions.end());
    const std::size_t m = est.times.size();
    double st = 0, sx = 0;
    for (std::size_t i = 0; i < m; ++i) {
        st += est.times[i];
        sx += est.positions[i];
    }
    const double mt = st / m, mx = sx / m;
    double stt = 0, stx = 0, sxx = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dt = est.times[i] - mt, dxp = est.positions[i] - mx;
        stt += dt * dt;
        stx += dt * dxp;
        sxx += dxp * dxp;
    }
    if (!(stt > 0.0)) throw ValidationError("estimate_speed: degenerate time series");
    est.speed = stx / stt;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double fit = mx + est.speed * (est.times[i] - mt);
        ss_res += (est.positions[i] - fit) * (est.positions[i] - fit);
    }
    est.r_squared = (sxx > 0.0) ? std::max(0.0, 1.0 - ss_res / sxx) : 1.0;
    est.t_lo = est.times.front();
    est.t_hi = est.times.back();
    return est;
}

ProfileComparison compare_profile(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho,
                                  const FrontProfile& profile, double level) {
    double z_level;
    if (profile.jump_location && level < profile.value_at(*profile.jump_location)) {
        z_level = *profile.jump_location;  // the level sits inside the jump
    } else {
        z_level = front_position(profile.z, profile.nu, level);
    }
    ProfileComparison cmp;
    cmp.shift = front_position(x, rho, level) - z_level;
    const bool extends_right = profile.shift == ShiftConvention::JumpAtOrigin;
    double l2 = 0.0;
    const double dx = x.size() > 1 ? x[1] - x[0] : 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double zq = x[i] - cmp.shift;
        if (zq < profile.z[0]) continue;
        if (zq > profile.z[profile.z.size() - 1] && !extends_right) continue;
        const double diff = rho[i] - profile.value_at(zq);
        cmp.linf = std::max(cmp.linf, std::abs(diff));
        l2 += diff * diff * dx;
        ++cmp.overlap_samples;
    }
    cmp.l2 = std::sqrt(l2);
    return cmp;
}

JumpSharpness jump_sharpness(const Eigen::ArrayXd& x, const Eigen::ArrayXd& rho,
                             double theta) {
    if (!(theta > 0.0)) throw ValidationError("jump_sharpness: theta must be positive");
    const double dx = x[1] - x[0];
    const double x_hi = front_position(x, rho, 0.9 * theta);
    const double x_lo = front_position(x, rho, 0.1 * theta);
    JumpSharpness js;
    js.width_cells = static_cast<int>(std::ceil((x_lo - x_hi) / dx - 1e-9));
    js.position = front_position(x, rho, 0.5 * theta);
    Eigen::Index i_back = 0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i)
        if (x[i] <= x_hi) i_back = i;
    js.back_value = rho[i_back];
    return js;
}

Eigen::ArrayXd weight_profile(const Eigen::ArrayXd& z, const FrontProfile& profile,
                              const GrowthFunction& g) {
    const Eigen::Index n = z.size();
    if (n < 2) throw ValidationError("weight_profile: need at least 2 samples");
    if (profile.params.regime == Regime::Critical &&
        z[n - 1] >= -1e-12)
        throw SingularWeightError(
            "weight_profile: critical-regime weight diverges at the touchdown point; "
            "restrict the grid to z < 0");
    Eigen::ArrayXd slope(n);
    for (Eigen::Index i = 0; i < n; ++i)
        slope[i] = weight_slope(profile.value_at(z[i]), profile.params, g);
    Eigen::ArrayXd phi(n);
    phi[0] = 0.0;
    for (Eigen::Index i = 1; i < n; ++i)
        phi[i] = phi[i - 1] + (z[i] - z[i - 1]) * 0.5 * (slope[i] + slope[i - 1]);
    return phi;
}

double lyapunov_energy(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u,
                       const Eigen::ArrayXd& v, const Eigen::ArrayXd& phi) {
    if (u.size() != z.size() || v.size() != z.size() || phi.size() != z.size())
        throw ValidationError("lyapunov_energy: array size mismatch");
    // Log-form product: far ahead of the perturbation the field is exactly 0
    // while exp(2 phi) can overflow, and 0 * inf would poison the integral.
    Eigen::ArrayXd dens(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double m2 = u[i] * u[i] + v[i] * v[i];
        dens[i] = m2 > 0.0 ? 0.5 * std::exp(2.0 * phi[i] + std::log(m2)) : 0.0;
    }
    return trapezoid(z, dens);
}

double lyapunov_energy(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u,
                       const Eigen::ArrayXd& v, const FrontProfile& profile,
                       const GrowthFunction& g) {
    return lyapunov_energy(z, u, v, weight_profile(z, profile, g));
}

double weight_discriminant(double nu, const WaveParameters& wp, const GrowthFunction& g) {
    const double e2 = wp.epsilon * wp.epsilon;
    const double s = wp.speed;
    const double mu = weight_slope(nu, wp, g);
    const double fp = g.derivative(nu);
    return 4.0 / e2 * ((1.0 - e2 * s * s) * mu * mu - s * (1.0 - e2 * fp) * mu + fp);
}

double stability_gap(double nu, const WaveParameters& wp, const GrowthFunction& g) {
    const double e2 = wp.epsilon * wp.epsilon;
    const double fp = g.derivative(nu);
    if (wp.regime == Regime::Parabolic) {
        const double s = wp.speed;
        const double mu = weight_slope(nu, wp, g);
        const double b = 2.0 * s * mu - fp + 1.0 / e2;
        const double root = std::sqrt((fp + 1.0 / e2) * (fp + 1.0 / e2) +
                                      4.0 * mu * mu / e2);
        return 0.5 * (b - root);
    }
    const double denom = 1.0 - e2 * fp;
    if (denom <= 1e-12)
        throw SingularWeightError("stability_gap: singular at the front edge");
    return 1.0 / (e2 * denom);
}

StabilityWeights build_stability_weights(const Eigen::ArrayXd& z,
                                         const FrontProfile& profile,
                                         const GrowthFunction& g) {
    const WaveParameters& wp = profile.params;
    if (wp.regime != Regime::Parabolic)
        throw RegimeError("stability weights: parabolic regime required");
    const double e2 = wp.epsilon * wp.epsilon;
    const double s = wp.speed;
    const double f0 = g.fprime0();
    const Eigen::Index n = z.size();

    StabilityWeights w;
    w.nu.resize(n);
    w.nu_prime.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w.nu[i] = profile.value_at(z[i]);
        w.nu_prime[i] = profile.slope_at(z[i]);
    }
    Eigen::ArrayXd fp = w.nu.unaryExpr([&](double v) { return g.derivative(v); });
    Eigen::ArrayXd fpp = w.nu.unaryExpr([&](double v) { return g.second_derivative(v); });
    Eigen::ArrayXd mu(n);
    for (Eigen::Index i = 0; i < n; ++i) mu[i] = weight_slope(w.nu[i], wp, g);

    w.a1 = s * e2 * fpp * w.nu_prime - fp;
    w.a2 = 0.5 * s * e2 * fpp * w.nu_prime - fp;
    w.a3 = 2.0 * e2 * s * mu + 1.0 - e2 * fp;
    w.a4 = -s * (1.0 - e2 * fp) - 2.0 * (e2 * s * s - 1.0) * mu;
    // Closed form of the weighted zero-order coefficient (nonnegative).
    const double denom0 = (1.0 - e2 * f0) * (1.0 - e2 * f0);
    w.a5 = (f0 - fp) * (1.0 - e2 * e2 * f0 * fp) / denom0 +
           0.5 * e2 * s * fpp * w.nu_prime;

    w.delta = (1.0 - e2 * f0) / (2.0 * e2);
    w.delta_prime = w.delta * (1.0 - e2 * s * s) / (1.0 + e2 * s * s);

    // d/dz of a1 along the profile, using the profile ODE for nu''.
    Eigen::ArrayXd nupp(n), fppp(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        nupp[i] = (g(w.nu[i]) + (1.0 - e2 * fp[i]) * s * w.nu_prime[i]) /
                  (e2 * s * s - 1.0);
        fppp[i] = third_derivative(g, w.nu[i]);
    }
    const Eigen::ArrayXd da1_dz =
        s * e2 * (fppp * w.nu_prime * w.nu_prime + fpp * nupp) - fpp * w.nu_prime;

    w.a6 = 0.5 * w.a1 + w.delta * (1.0 - e2 * f0) / 4.0;
    w.a7 = 0.5 * s * da1_dz + w.delta * w.a2;
    w.a8 = 0.5 * w.a5 + w.delta_prime * (1.0 - e2 * f0) / 4.0;

    // Largest z with min(a6, a7) > 0 on everything to the left.
    Eigen::Index i0 = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(std::min(w.a6[i], w.a7[i]) > 0.0)) break;
        i0 = i;
    }
    if (i0 < 0)
        throw NumericalError(
            "stability weights: grid does not reach the coercive back region");
    w.z0_index = static_cast<int>(i0);
    w.z0 = z[i0];

    w.phi.resize(n);
    w.phi[0] = 0.0;
    for (Eigen::Index i = 1; i < n; ++i)
        w.phi[i] = w.phi[i - 1] + (z[i] - z[i - 1]) * 0.5 * (mu[i] + mu[i - 1]);
    w.phi -= w.phi[i0];

    // Coupling constant: small enough that the unweighted pair is dominated by
    // the weighted energy ahead of z0; sup norms evaluated on the grid.
    double m1 = 0.0, m2 = 0.0;
    for (Eigen::Index i = i0 + 1; i < n; ++i) {
        const double damp = std::exp(-2.0 * w.phi[i]);
        m1 = std::max(m1, std::abs(w.a6[i]) * damp);
        if (w.a5[i] > 0.0) m2 = std::max(m2, std::abs(w.a7[i]) * damp / w.a5[i]);
    }
    const double cap1 = m1 > 0.0 ? (1.0 - e2 * f0) / (4.0 * m1)
                                 : std::numeric_limits<double>::infinity();
    const double cap2 = m2 > 0.0 ? 1.0 / m2 : std::numeric_limits<double>::infinity();
    w.delta_dblprime = 0.5 * w.delta_prime * std::min(cap1, cap2);
    if (!std::isfinite(w.delta_dblprime) || !(w.delta_dblprime > 0.0))
        throw NumericalError("stability weights: coupling constant degenerate");
    return w;
}

EnergyReport energy_suite(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u_prev,
                          const Eigen::ArrayXd& u_curr, double dt, double t,
                          const StabilityWeights& w, const FrontProfile& profile,
                          const GrowthFunction& g) {
    const Eigen::Index n = z.size();
    if (u_prev.size() != n || u_curr.size() != n)
        throw ValidationError("energy_suite: array size mismatch");
    if (!(dt > 0.0)) throw ValidationError("energy_suite: dt must be positive");
    const WaveParameters& wp = profile.params;
    const double e2 = wp.epsilon * wp.epsilon;
    const double s = wp.speed;

    const Eigen::ArrayXd& u = u_prev;
    const Eigen::ArrayXd du_dt = (u_curr - u_prev) / dt;
    const Eigen::ArrayXd du_dz = d_dz(z, u);
    const Eigen::ArrayXd conv = du_dt - s * du_dz;  // material derivative in the frame
    const Eigen::ArrayXd fp = w.nu.unaryExpr([&](double v) { return g.derivative(v); });
    const Eigen::ArrayXd one_m = 1.0 - e2 * fp;

    EnergyReport rep;
    rep.t = t;
    rep.delta = w.delta;
    rep.delta_prime = w.delta_prime;
    rep.delta_dblprime = w.delta_dblprime;
    rep.z0 = w.z0;

    rep.e1u = 0.5 * e2 * trapezoid(z, conv.square()) +
              0.5 * trapezoid(z, du_dz.square()) +
              0.5 * trapezoid(z, w.a1 * u.square());
    rep.e2u = e2 * trapezoid(z, u * conv) + 0.5 * trapezoid(z, one_m * u.square());
    rep.q1u = trapezoid(z, one_m * conv.square()) +
              trapezoid(z, (w.a7 - w.delta * w.a2) * u.square());
    rep.q2u = -e2 * trapezoid(z, conv.square()) + trapezoid(z, du_dz.square()) +
              trapezoid(z, w.a2 * u.square());

    const Eigen::ArrayXd expphi = w.phi.exp();
    const Eigen::ArrayXd wf = expphi * u;
    const Eigen::ArrayXd wf_curr = expphi * u_curr;
    const Eigen::ArrayXd dw_dt = (wf_curr - wf) / dt;
    const Eigen::ArrayXd dw_dz = d_dz(z, wf);
    const double coef_z = 1.0 - e2 * s * s;

    rep.e1w = 0.5 * e2 * trapezoid(z, dw_dt.square()) +
              0.5 * coef_z * trapezoid(z, dw_dz.square()) +
              0.5 * trapezoid(z, w.a5 * wf.square());
    rep.e2w = e2 * trapezoid(z, wf * dw_dt) + 0.5 * trapezoid(z, w.a3 * wf.square());
    rep.q1w = trapezoid(z, w.a3 * dw_dt.square()) +
              trapezoid(z, w.a4 * dw_dt * dw_dz);
    rep.q2w = -e2 * trapezoid(z, dw_dt.square()) + coef_z * trapezoid(z, dw_dz.square()) +
              2.0 * e2 * s * trapezoid(z, dw_dt * dw_dz) +
              trapezoid(z, w.a5 * wf.square());

    rep.e_combined = rep.e1w + w.delta_prime * rep.e2w +
                     w.delta_dblprime * (rep.e1u + w.delta * rep.e2u);
    rep.lyapunov = 0.5 * trapezoid(z, u.square() * (2.0 * w.phi).exp());
    return rep;
}

EnergyReport energy_suite(const Eigen::ArrayXd& z, const Eigen::ArrayXd& u_prev,
                          const Eigen::ArrayXd& u_curr, double dt, double t,
                          const FrontProfile& profile, const GrowthFunction& g) {
    const StabilityWeights w = build_stability_weights(z, profile, g);
    return energy_suite(z, u_prev, u_curr, dt, t, w, profile, g);
}

}  // namespace hyperfront
