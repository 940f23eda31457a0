#include "hyperfront/profile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyperfront/errors.hpp"
#include "hyperfront/ode.hpp"

namespace hyperfront {

namespace {

constexpr double kSonicTol = 1e-14;  // on eps^2 s^2 - 1

/// March nu' = rhs(nu) node-to-node on a uniform grid away from an anchor,
/// collecting samples (anchor excluded) until `stop(nu)` holds for a freshly
/// produced sample, which is kept as the terminal one.
template <class Rhs, class Stop>
void march_uniform(Rhs&& rhs, double nu0, double dz_signed, Stop&& stop,
                   std::vector<double>& out, std::size_t max_nodes = 50000000) {
    auto f = [&](double, double y) { return rhs(y); };
    double nu = nu0;
    for (std::size_t i = 0; i < max_nodes; ++i) {
        nu = detail::rk4_march(f, 0.0, nu, dz_signed, 2);
        out.push_back(nu);
        if (stop(nu)) return;
    }
    throw NumericalError("profile sampling exceeded the node budget");
}

/// Assemble a FrontProfile from backward samples (ordered away from the
/// anchor), the anchor value, and forward samples.
FrontProfile assemble(FrontProfileKind kind, const WaveParameters& params, double dz,
                      const std::vector<double>& back, double anchor,
                      const std::vector<double>& fwd, ShiftConvention shift) {
    const Eigen::Index nb = static_cast<Eigen::Index>(back.size());
    const Eigen::Index nf = static_cast<Eigen::Index>(fwd.size());
    FrontProfile p;
    p.kind = kind;
    p.params = params;
    p.shift = shift;
    p.z.resize(nb + 1 + nf);
    p.nu.resize(nb + 1 + nf);
    for (Eigen::Index i = 0; i < nb; ++i) {
        p.z[nb - 1 - i] = -static_cast<double>(i + 1) * dz;
        p.nu[nb - 1 - i] = back[static_cast<std::size_t>(i)];
    }
    p.z[nb] = 0.0;
    p.nu[nb] = anchor;
    for (Eigen::Index i = 0; i < nf; ++i) {
        p.z[nb + 1 + i] = static_cast<double>(i + 1) * dz;
        p.nu[nb + 1 + i] = fwd[static_cast<std::size_t>(i)];
    }
    return p;
}

void check_monotone(const FrontProfile& p) {
    for (Eigen::Index i = 1; i < p.nu.size(); ++i)
        if (p.nu[i] > p.nu[i - 1] + 1e-12)
            throw NumericalError("constructed profile is not monotone");
}

void enforce_residual(const FrontProfile& p, const GrowthFunction& g, double tol) {
    const ResidualReport r = residual(p, g);
    if (r.max_abs > tol)
        throw NumericalError("profile residual " + std::to_string(r.max_abs) +
                             " exceeds tolerance " + std::to_string(tol));
}

/// Phase orbit nodes -> Hermite table over ascending height.
detail::HermiteTable orbit_table(const detail::OdeNodes& nodes, bool ascending) {
    std::vector<double> x = nodes.x, y = nodes.y, dy = nodes.dy;
    if (!ascending) {
        std::reverse(x.begin(), x.end());
        std::reverse(y.begin(), y.end());
        std::reverse(dy.begin(), dy.end());
    }
    return detail::HermiteTable(std::move(x), std::move(y), std::move(dy));
}

PhaseOrbit to_orbit(const detail::OdeNodes& nodes, bool ascending) {
    PhaseOrbit orbit;
    const Eigen::Index n = static_cast<Eigen::Index>(nodes.x.size());
    orbit.height.resize(n);
    orbit.p.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = ascending ? i : n - 1 - i;
        orbit.height[i] = nodes.x[static_cast<std::size_t>(j)];
        orbit.p[i] = nodes.y[static_cast<std::size_t>(j)];
    }
    return orbit;
}

}  // namespace

const char* to_string(FrontProfileKind k) {
    switch (k) {
        case FrontProfileKind::SmoothParabolic: return "smooth-parabolic";
        case FrontProfileKind::WeakSonic: return "weak-sonic";
        case FrontProfileKind::DiscontinuousHyperbolic: return "discontinuous-hyperbolic";
        case FrontProfileKind::ContinuousCritical: return "continuous-critical";
        case FrontProfileKind::SmoothSupersonic: return "smooth-supersonic";
    }
    return "?";
}

// Local decay rate of 1 - nu at the left grid end: 1 - nu ~ gap * e^{mu z}.
static double settle_rate(const FrontProfile& p) {
    const double gap = 1.0 - p.nu[0];
    return gap > 0.0 ? -p.nu_prime[0] / gap : 0.0;
}

// Local decay rate of nu at the right grid end: nu ~ end * e^{-lam z}.
static double tail_rate(const FrontProfile& p) {
    const double end = p.nu[p.nu.size() - 1];
    return end > 0.0 ? -p.nu_prime[p.nu.size() - 1] / end : 0.0;
}

double FrontProfile::value_at(double zq) const {
    if (shift == ShiftConvention::JumpAtOrigin && zq > 0.0) return 0.0;
    const Eigen::Index n = z.size();
    if (zq <= z[0]) {
        const double mu = settle_rate(*this);
        if (!(mu > 0.0)) return nu[0];
        return 1.0 - (1.0 - nu[0]) * std::exp(mu * (zq - z[0]));
    }
    if (zq >= z[n - 1]) {
        if (nu[n - 1] <= 0.0) return 0.0;
        const double lam = tail_rate(*this);
        if (!(lam > 0.0)) return nu[n - 1];
        return nu[n - 1] * std::exp(-lam * (zq - z[n - 1]));
    }
    const double h = dz();
    const Eigen::Index i = std::min<Eigen::Index>(
        n - 2, static_cast<Eigen::Index>(std::floor((zq - z[0]) / h)));
    const double t = (zq - z[i]) / h;
    return (1.0 - t) * nu[i] + t * nu[i + 1];
}

double FrontProfile::slope_at(double zq) const {
    if (shift == ShiftConvention::JumpAtOrigin && zq > 0.0) return 0.0;
    const Eigen::Index n = z.size();
    if (zq <= z[0]) {
        const double mu = settle_rate(*this);
        if (!(mu > 0.0)) return nu_prime[0];
        return nu_prime[0] * std::exp(mu * (zq - z[0]));
    }
    if (zq >= z[n - 1]) {
        if (nu[n - 1] <= 0.0) return 0.0;
        const double lam = tail_rate(*this);
        if (!(lam > 0.0)) return nu_prime[n - 1];
        return nu_prime[n - 1] * std::exp(-lam * (zq - z[n - 1]));
    }
    const double h = dz();
    const Eigen::Index i = std::min<Eigen::Index>(
        n - 2, static_cast<Eigen::Index>(std::floor((zq - z[0]) / h)));
    const double t = (zq - z[i]) / h;
    return (1.0 - t) * nu_prime[i] + t * nu_prime[i + 1];
}

ResidualReport residual(const FrontProfile& p, const GrowthFunction& g) {
    const Eigen::Index n = p.z.size();
    if (n < 3) throw ValidationError("residual: need at least 3 samples");
    const double h = p.dz();
    const double eps = p.params.epsilon, s = p.params.speed;
    const double a = eps * eps * s * s - 1.0;
    Eigen::Index hi = n - 2;  // last admissible center index
    if (p.shift == ShiftConvention::JumpAtOrigin) {
        // Smooth piece only: stay more than two spacings behind the jump.
        const double zmax = (p.jump_location ? *p.jump_location : 0.0) - 2.0 * h;
        while (hi >= 1 && !(p.z[hi] < zmax)) --hi;
    }
    ResidualReport rep;
    rep.interior_samples = static_cast<int>(std::max<Eigen::Index>(0, hi));
    rep.coarse_grid = rep.interior_samples < 100;
    double worst = 0.0;
    for (Eigen::Index i = 1; i <= hi; ++i) {
        const double d2 = (p.nu[i + 1] - 2.0 * p.nu[i] + p.nu[i - 1]) / (h * h);
        const double d1 = (p.nu[i + 1] - p.nu[i - 1]) / (2.0 * h);
        const double r =
            a * d2 - (1.0 - eps * eps * g.derivative(p.nu[i])) * s * d1 - g(p.nu[i]);
        worst = std::max(worst, std::abs(r));
    }
    rep.max_abs = worst;
    return rep;
}

FrontProfile build_parabolic(double epsilon, double speed, const GrowthFunction& g,
                             const ProfileOptions& opts) {
    WaveParameters params = WaveParameters::make(epsilon, speed, g);
    if (params.regime != Regime::Parabolic)
        throw RegimeError("build_parabolic: parabolic regime required");
    const double e2 = epsilon * epsilon;
    if (e2 * speed * speed - 1.0 > -kSonicTol)
        throw ValidationError(
            "build_parabolic: subsonic speeds only (use the sonic or supersonic "
            "constructor)");
    const double disc = char_discriminant_zero(epsilon, speed, g);
    if (disc < 0.0)
        throw NoMonotoneFrontError(
            "no monotone front below the minimal speed: oscillatory tail", disc);

    // Phase orbit p(nu) = -nu' from the settled state down to the invaded one,
    // leaving the saddle along its outgoing eigendirection.
    const double one_ms2 = 1.0 - e2 * speed * speed;
    auto phase_rhs = [&](double nu, double p) {
        return ((1.0 - e2 * g.derivative(nu)) * speed * p - g(nu)) / (one_ms2 * p);
    };
    detail::OdeOptions oopt;
    oopt.abs_tol = opts.abs_tol;
    oopt.rel_tol = opts.rel_tol;
    oopt.max_step = 2e-3;  // caps the Hermite interpolation error well below tol
    const double d0 = opts.delta0;
    detail::OdeNodes nodes = detail::integrate_to(
        phase_rhs, 1.0 - d0, params.relax_rate * d0, d0, oopt,
        [](double, double p) { return !(p > 0.0); },
        "phase orbit touched zero before reaching the invaded state");
    const detail::HermiteTable p_of_nu = orbit_table(nodes, /*ascending=*/false);

    // Sample nu(z) on the uniform grid by marching away from nu(0) = 1/2.
    auto z_rhs = [&](double nu) { return -p_of_nu(nu); };
    std::vector<double> fwd, back;
    march_uniform(z_rhs, 0.5, opts.dz, [&](double nu) { return nu < opts.tol_end; }, fwd);
    march_uniform(z_rhs, 0.5, -opts.dz, [&](double nu) { return nu >= 1.0 - opts.tol_end; },
                  back);

    FrontProfile p = assemble(FrontProfileKind::SmoothParabolic, params, opts.dz, back, 0.5,
                              fwd, ShiftConvention::HalfLevelAtOrigin);
    p.nu_prime = p.nu.unaryExpr([&](double nu) { return -p_of_nu(nu); });
    check_monotone(p);
    enforce_residual(p, g, opts.residual_tol);
    return p;
}

FrontProfile build_weak_sonic(double epsilon, const GrowthFunction& g,
                              const ProfileOptions& opts) {
    WaveParameters params = WaveParameters::make(epsilon, 1.0 / epsilon, g);
    if (params.regime != Regime::Parabolic)
        throw RegimeError("build_weak_sonic: parabolic regime required");
    const double e2 = epsilon * epsilon;
    // First-order profile ODE; the denominator is bounded away from 0 in the
    // parabolic regime.
    auto rhs = [&](double nu) {
        const double c = std::clamp(nu, 0.0, 1.0);
        return -epsilon * g(c) / (1.0 - e2 * g.derivative(c));
    };
    std::vector<double> fwd, back;
    march_uniform(rhs, 0.5, opts.dz, [&](double nu) { return nu < opts.tol_end; }, fwd);
    march_uniform(rhs, 0.5, -opts.dz, [&](double nu) { return nu >= 1.0 - opts.tol_end; },
                  back);
    FrontProfile p = assemble(FrontProfileKind::WeakSonic, params, opts.dz, back, 0.5, fwd,
                              ShiftConvention::HalfLevelAtOrigin);
    p.nu_prime = p.nu.unaryExpr([&](double nu) { return rhs(nu); });
    check_monotone(p);
    enforce_residual(p, g, opts.residual_tol);
    return p;
}

FrontProfile build_hyperbolic(double epsilon, const GrowthFunction& g,
                              const ProfileOptions& opts) {
    WaveParameters params = WaveParameters::make(epsilon, 1.0 / epsilon, g);
    if (params.regime == Regime::Parabolic)
        throw RegimeError("build_hyperbolic: critical or hyperbolic regime required");
    const bool critical = params.regime == Regime::Critical;
    const double e2 = epsilon * epsilon;
    const double theta = params.jump_height;  // 0 in the critical regime
    // Touchdown slope of the critical front, from the 0/0 limit of the ODE.
    const double critical_slope = g.fprime0() / (epsilon * g.second_derivative(0.0));
    auto rhs = [&](double nu) {
        if (critical && nu < 1e-8) return critical_slope;
        const double c = std::clamp(nu, 0.0, 1.0);
        return epsilon * g(c) / (e2 * g.derivative(c) - 1.0);
    };

    // The jump (or touchdown) is pinned to z = 0 by anchoring the sampling at
    // nu(0) = theta; the descent is transversal, so the anchor is exact.
    std::vector<double> back;
    march_uniform(rhs, theta, -opts.dz,
                  [&](double nu) { return nu >= 1.0 - opts.tol_end; }, back);
    std::vector<double> fwd(static_cast<std::size_t>(std::ceil(opts.pad_right / opts.dz)),
                            0.0);
    FrontProfile p = assemble(critical ? FrontProfileKind::ContinuousCritical
                                       : FrontProfileKind::DiscontinuousHyperbolic,
                              params, opts.dz, back, theta, fwd,
                              ShiftConvention::JumpAtOrigin);
    if (!critical) p.jump_location = 0.0;
    p.nu_prime = Eigen::ArrayXd::Zero(p.z.size());
    for (Eigen::Index i = 0; i < p.z.size(); ++i)
        if (p.z[i] <= 0.0) p.nu_prime[i] = rhs(p.nu[i]);
    check_monotone(p);
    enforce_residual(p, g, opts.residual_tol);
    return p;
}

SupersonicFront build_supersonic(double epsilon, double speed, const GrowthFunction& g,
                                 const ProfileOptions& opts) {
    WaveParameters params = WaveParameters::make(epsilon, speed, g);
    const double e2 = epsilon * epsilon;
    const double a = e2 * speed * speed - 1.0;
    if (!(a > kSonicTol))
        throw ValidationError("build_supersonic: requires speed > 1/eps");
    const double lam = *params.decay_rate;   // outgoing rate at the invaded state
    const double k = *params.super_slope;    // supersolution slope
    // Reversed-wave orbit P(v) = +V' from the invaded state up to the settled
    // one, confined to the trapping region 0 <= P <= min(lam*v, k*F(v)).
    auto phase_rhs = [&](double v, double P) {
        const double c = std::clamp(v, 0.0, 1.0);
        return ((e2 * g.derivative(c) - 1.0) * speed + g(c) / P) / a;
    };
    detail::OdeOptions oopt;
    oopt.abs_tol = opts.abs_tol;
    oopt.rel_tol = opts.rel_tol;
    oopt.max_step = 2e-3;
    const double d0 = opts.delta0;
    auto escaped = [&](double v, double P) {
        const double c = std::clamp(v, 0.0, 1.0);
        return !(P > 0.0) || P > std::min(lam * c, k * g(c)) + 1e-8;
    };
    detail::OdeNodes nodes =
        detail::integrate_to(phase_rhs, d0, lam * d0, 1.0 - d0, oopt, escaped,
                             "supersonic orbit left the trapping region");
    const detail::HermiteTable P_of_v = orbit_table(nodes, /*ascending=*/true);

    auto z_rhs = [&](double nu) { return -P_of_v(nu); };
    std::vector<double> fwd, back;
    march_uniform(z_rhs, 0.5, opts.dz, [&](double nu) { return nu < opts.tol_end; }, fwd);
    march_uniform(z_rhs, 0.5, -opts.dz, [&](double nu) { return nu >= 1.0 - opts.tol_end; },
                  back);
    SupersonicFront out;
    out.profile = assemble(FrontProfileKind::SmoothSupersonic, params, opts.dz, back, 0.5,
                           fwd, ShiftConvention::HalfLevelAtOrigin);
    out.profile.nu_prime = out.profile.nu.unaryExpr([&](double nu) { return -P_of_v(nu); });
    out.orbit = to_orbit(nodes, /*ascending=*/true);
    check_monotone(out.profile);
    enforce_residual(out.profile, g, opts.residual_tol);
    return out;
}

}  // namespace hyperfront
