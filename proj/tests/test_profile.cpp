#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfront/dispersion.hpp"
#include "hyperfront/errors.hpp"
#include "hyperfront/growth.hpp"
#include "hyperfront/profile.hpp"

using namespace hyperfront;

namespace {
const GrowthFunction g1 = GrowthFunction::logistic(1.0);

bool nonincreasing(const Eigen::ArrayXd& v, double tol = 1e-12) {
    for (Eigen::Index i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] > v[i] + tol) return false;
    return true;
}
}  // namespace

TEST_CASE("smooth parabolic front at the minimal speed") {
    const FrontProfile p = build_parabolic(0.5, 1.6, g1);
    CHECK(p.kind == FrontProfileKind::SmoothParabolic);
    CHECK(p.shift == ShiftConvention::HalfLevelAtOrigin);
    CHECK(p.value_at(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nonincreasing(p.nu));
    CHECK(p.nu[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(p.nu[p.nu.size() - 1] == doctest::Approx(0.0).epsilon(2e-6));

    const ResidualReport res = residual(p, g1);
    CHECK(res.max_abs < 1e-6);
    CHECK_FALSE(res.coarse_grid);
    MESSAGE("minimal-speed residual: ", res.max_abs, " over ", res.interior_samples,
            " samples");

    // One-sided tangency at the invaded state: nu' + lambda nu stays barely
    // nonnegative for the double-root decay lambda = 5/3.
    const double lambda = 5.0 / 3.0;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.z.size(); ++i)
        worst = std::min(worst, p.nu_prime[i] + lambda * p.nu[i]);
    CHECK(worst >= -1e-8);
    MESSAGE("min(nu' + lambda nu) = ", worst);
}

TEST_CASE("parabolic front above the minimal speed decays at the slow root") {
    const FrontProfile p = build_parabolic(0.5, 1.8, g1);
    CHECK(nonincreasing(p.nu));
    CHECK(residual(p, g1).max_abs < 1e-6);
    const WaveParameters wp = p.params;
    REQUIRE(wp.decay_rate.has_value());
    // Log-slope of the leading tail vs the smaller characteristic root.
    const Eigen::Index n = p.z.size();
    Eigen::Index i1 = n - 1;
    while (p.nu[i1] < 1e-5) --i1;
    Eigen::Index i0 = i1;
    while (p.nu[i0] < 1e-4) --i0;
    const double rate = std::log(p.nu[i0] / p.nu[i1]) / (p.z[i1] - p.z[i0]);
    CHECK(rate == doctest::Approx(*wp.decay_rate).epsilon(1e-3));
    MESSAGE("tail rate ", rate, " vs root ", *wp.decay_rate);
}

TEST_CASE("sampled residual shrinks at second order under grid refinement") {
    // Coarse enough that the dz^2 differencing term dominates the fixed
    // interpolation floor (~3e-9) of the sampled values.
    ProfileOptions opts;
    opts.residual_tol = 1e-4;  // probing truncation, not the production bound
    opts.dz = 6.4e-3;
    const double r1 = residual(build_parabolic(0.5, 1.6, g1, opts), g1).max_abs;
    opts.dz = 3.2e-3;
    const double r2 = residual(build_parabolic(0.5, 1.6, g1, opts), g1).max_abs;
    CHECK(r1 / r2 > 3.2);
    CHECK(r1 / r2 < 5.0);
    MESSAGE("residuals ", r1, " -> ", r2, " (ratio ", r1 / r2, ")");
}

TEST_CASE("weak sonic front: exact anchor slope and 2/3 tail rate") {
    const FrontProfile p = build_weak_sonic(0.5, g1);
    CHECK(p.kind == FrontProfileKind::WeakSonic);
    CHECK(p.value_at(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    // nu'(0) = -eps F(1/2) / (1 - eps^2 F'(1/2)) = -0.125 by substitution.
    CHECK(p.slope_at(0.0) == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(nonincreasing(p.nu));
    CHECK(residual(p, g1).max_abs < 1e-6);
    Eigen::Index i = p.z.size() - 1;
    while (p.nu[i] < 1e-5) --i;
    CHECK(p.nu_prime[i] / p.nu[i] == doctest::Approx(-2.0 / 3.0).epsilon(1e-3));
    CHECK_THROWS_AS(build_weak_sonic(2.0, g1), RegimeError);
}

TEST_CASE("discontinuous hyperbolic front at eps = 2") {
    const FrontProfile p = build_hyperbolic(2.0, g1);
    CHECK(p.kind == FrontProfileKind::DiscontinuousHyperbolic);
    CHECK(p.shift == ShiftConvention::JumpAtOrigin);
    REQUIRE(p.jump_location.has_value());
    CHECK(*p.jump_location == 0.0);
    CHECK(p.value_at(0.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p.value_at(0.1) == 0.0);
    CHECK(p.value_at(2.0) == 0.0);
    CHECK(nonincreasing(p.nu));
    CHECK(residual(p, g1).max_abs < 1e-6);

    // Closed-form check: separating the first-order profile equation gives
    //   eps z = (eps^2-1) log(nu/theta) + (eps^2+1) log((1-nu)/(1-theta)).
    const double theta = 0.75;
    for (double z : {-0.5, -1.0, -2.0, -4.0}) {
        const double nu = p.value_at(z);
        const double rhs =
            3.0 * std::log(nu / theta) + 5.0 * std::log((1.0 - nu) / (1.0 - theta));
        CHECK(2.0 * z == doctest::Approx(rhs).epsilon(1e-9));
    }

    // Relaxation toward 1 at rate eps r / (1 + eps^2 r) = 0.4.
    Eigen::Index i = 0;
    while (1.0 - p.nu[i] < 1e-5) ++i;
    CHECK(p.nu_prime[i] / (p.nu[i] - 1.0) == doctest::Approx(0.4).epsilon(1e-3));
    CHECK_THROWS_AS(build_hyperbolic(0.5, g1), RegimeError);
}

TEST_CASE("critical front matches 1 - exp(z/2) with a corner at the origin") {
    const FrontProfile p = build_hyperbolic(1.0, g1);
    CHECK(p.kind == FrontProfileKind::ContinuousCritical);
    CHECK(p.shift == ShiftConvention::JumpAtOrigin);
    CHECK_FALSE(p.jump_location.has_value());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.z.size(); ++i) {
        if (p.z[i] > 0.0) {
            CHECK(p.nu[i] == 0.0);
            continue;
        }
        const double exact = 1.0 - std::exp(p.z[i] / 2.0);
        worst = std::max(worst, std::abs(p.nu[i] - exact));
    }
    CHECK(worst < 1e-10);
    MESSAGE("max deviation from the closed form: ", worst);
    // Transversal touchdown slope F'(0) / (eps F''(0)) = -1/2.
    CHECK(p.slope_at(0.0) == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(p.value_at(0.5) == 0.0);
}

TEST_CASE("supersonic orbit stays inside the trapping region") {
    const double eps = std::sqrt(2.0);
    const SupersonicFront sf = build_supersonic(eps, 1.0, g1);
    const FrontProfile& p = sf.profile;
    CHECK(p.kind == FrontProfileKind::SmoothSupersonic);
    CHECK(p.value_at(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nonincreasing(p.nu));
    CHECK(residual(p, g1).max_abs < 1e-6);

    const double lambda_u = (1.0 + std::sqrt(5.0)) / 2.0;
    REQUIRE(sf.orbit.height.size() > 10);
    double slack = 0.0;
    for (Eigen::Index i = 0; i < sf.orbit.height.size(); ++i) {
        const double v = sf.orbit.height[i];
        const double cap = std::min(lambda_u * v, 2.0 * g1(v));
        CHECK(sf.orbit.p[i] >= 0.0);
        slack = std::max(slack, sf.orbit.p[i] - cap);
        if (i > 0) CHECK(sf.orbit.height[i] > sf.orbit.height[i - 1]);
    }
    CHECK(slack <= 1e-8);
    const double p_end = sf.orbit.p[sf.orbit.p.size() - 1];
    CHECK(p_end < 1e-6);
    MESSAGE("trapping slack ", slack, ", endpoint p ", p_end);
}

TEST_CASE("constructor guards") {
    CHECK_THROWS_AS(build_parabolic(0.5, 1.5, g1), NoMonotoneFrontError);
    try {
        build_parabolic(0.5, 1.5, g1);
    } catch (const NoMonotoneFrontError& e) {
        CHECK(e.discriminant < 0.0);
    }
    CHECK_THROWS_AS(build_parabolic(2.0, 0.4, g1), RegimeError);
    CHECK_THROWS_AS(build_parabolic(0.5, 2.0, g1), ValidationError);
    CHECK_THROWS_AS(build_parabolic(0.5, 2.5, g1), ValidationError);
    CHECK_THROWS_AS(build_supersonic(0.5, 1.6, g1), ValidationError);
}

TEST_CASE("profile construction is deterministic") {
    const FrontProfile a = build_parabolic(0.5, 1.6, g1);
    const FrontProfile b = build_parabolic(0.5, 1.6, g1);
    REQUIRE(a.z.size() == b.z.size());
    CHECK((a.nu == b.nu).all());
    CHECK((a.nu_prime == b.nu_prime).all());
}
