#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "hyperfront/dispersion.hpp"
#include "hyperfront/errors.hpp"
#include "hyperfront/growth.hpp"

using namespace hyperfront;
using std::complex;

namespace {
const GrowthFunction g1 = GrowthFunction::logistic(1.0);

double char0(double eps, double s, complex<double> L, double fp0) {
    const complex<double> r =
        (eps * eps * s * s - 1.0) * L * L + (1.0 - eps * eps * fp0) * s * L - fp0;
    return std::abs(r);
}
}  // namespace

TEST_CASE("regime classification splits at eps^2 F'(0) = 1") {
    CHECK(classify(0.5, g1) == Regime::Parabolic);
    CHECK(classify(1.0, g1) == Regime::Critical);
    CHECK(classify(2.0, g1) == Regime::Hyperbolic);
    // 2e-10 away from critical is still parabolic; force_critical pins it.
    const double eps = std::sqrt(1.0 - 2e-10);
    CHECK(classify(eps, g1) == Regime::Parabolic);
    CHECK(classify(eps, g1, true) == Regime::Critical);
    CHECK(classify(0.5, GrowthFunction::logistic(4.0)) == Regime::Critical);
}

TEST_CASE("minimal speed formulas") {
    CHECK(minimal_speed(0.5, g1) == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(minimal_speed(1.0, g1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(minimal_speed(2.0, g1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(minimal_speed(0.2, g1) == doctest::Approx(2.0 / 1.04).epsilon(1e-15));
    // Both branches sit below the free-streaming speed.
    for (double eps : {0.1, 0.4, 0.9, 1.5, 3.0})
        CHECK(minimal_speed(eps, g1) <= 1.0 / eps + 1e-15);
}

TEST_CASE("jump height: closed form, bisection, and regime guard") {
    CHECK(jump_height(2.0, g1) == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(jump_height(3.0, g1) == doctest::Approx(8.0 / 9.0).epsilon(1e-13));
    CHECK(jump_height(1.0, g1) == 0.0);
    CHECK_THROWS_AS(jump_height(0.5, g1), RegimeError);

    // Same growth via the generic path must agree with the logistic shortcut.
    const GrowthFunction ga = GrowthFunction::analytic(
        [](double x) { return x * (1.0 - x); }, [](double x) { return 1.0 - 2.0 * x; },
        [](double) { return -2.0; });
    CHECK(jump_height(2.0, ga) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("characteristic roots at the reference parabolic point") {
    // eps = 0.5, s = s* = 1.6: double root 5/3 at the invaded state.
    const auto [r1, r2] = char_roots_zero(0.5, 1.6, g1);
    CHECK(r1.imag() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r1.real() == doctest::Approx(5.0 / 3.0).epsilon(1e-7));
    CHECK(r2.real() == doctest::Approx(5.0 / 3.0).epsilon(1e-7));
    CHECK(std::abs(char_discriminant_zero(0.5, 1.6, g1)) < 1e-12);

    // Settled state: 0.36 L^2 + 2 L - 1 = 0, positive root frozen.
    const auto [q1, q2] = char_roots_one(0.5, 1.6, g1);
    CHECK(q1.real() < 0.0);
    CHECK(q2.real() == doctest::Approx(0.4616399415807226).epsilon(1e-13));
    CHECK(q2.imag() == 0.0);
}

TEST_CASE("complex roots below the minimal speed, Vieta checks") {
    const double eps = 0.5, s = 1.5;  // s < s* = 1.6
    CHECK(char_discriminant_zero(eps, s, g1) < 0.0);
    const auto [r1, r2] = char_roots_zero(eps, s, g1);
    CHECK(r1.imag() != 0.0);
    CHECK(r1.real() == doctest::Approx(r2.real()).epsilon(1e-14));
    CHECK(r1.imag() == doctest::Approx(-r2.imag()).epsilon(1e-14));
    const double a = eps * eps * s * s - 1.0;
    const double b = (1.0 - eps * eps) * s;
    const complex<double> sum = r1 + r2, prod = r1 * r2;
    CHECK(std::abs(sum - complex<double>(-b / a)) < 1e-12);
    CHECK(std::abs(prod - complex<double>(-1.0 / a)) < 1e-12);
    CHECK(char0(eps, s, r1, 1.0) < 1e-12);
    CHECK(char0(eps, s, r2, 1.0) < 1e-12);
}

TEST_CASE("sonic speed degenerates the quadratic") {
    CHECK_THROWS_AS(char_roots_zero(1.0, 1.0, g1), DegenerateQuadraticError);
    CHECK_THROWS_AS(char_roots_one(2.0, 0.5, g1), DegenerateQuadraticError);
}

TEST_CASE("derived wave parameters across the regimes") {
    SUBCASE("parabolic minimal, eps = 0.5") {
        const WaveParameters wp = WaveParameters::make(0.5, 1.6, g1);
        CHECK(wp.regime == Regime::Parabolic);
        CHECK(wp.min_speed == doctest::Approx(1.6).epsilon(1e-15));
        REQUIRE(wp.decay_rate.has_value());
        CHECK(*wp.decay_rate == doctest::Approx(5.0 / 3.0).epsilon(1e-7));
        CHECK(wp.relax_rate == doctest::Approx(0.4616399415807226).epsilon(1e-13));
        CHECK(wp.jump_height == 0.0);
        CHECK_FALSE(wp.super_slope.has_value());
    }
    SUBCASE("weak sonic, eps = 0.5 at s = 2: linear-fallback rates") {
        const WaveParameters wp = WaveParameters::make(0.5, 2.0, g1);
        REQUIRE(wp.decay_rate.has_value());
        CHECK(*wp.decay_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(wp.relax_rate == doctest::Approx(0.4).epsilon(1e-14));
    }
    SUBCASE("hyperbolic sonic, eps = 2: jump, no leading tail") {
        const WaveParameters wp = WaveParameters::make(2.0, 0.5, g1);
        CHECK(wp.regime == Regime::Hyperbolic);
        CHECK_FALSE(wp.decay_rate.has_value());
        CHECK(wp.relax_rate == doctest::Approx(0.4).epsilon(1e-14));
        CHECK(wp.jump_height == doctest::Approx(0.75).epsilon(1e-13));
    }
    SUBCASE("critical sonic, eps = 1: touchdown, no exponential tail") {
        const WaveParameters wp = WaveParameters::make(1.0, 1.0, g1);
        CHECK(wp.regime == Regime::Critical);
        CHECK_FALSE(wp.decay_rate.has_value());
        CHECK(wp.relax_rate == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(wp.jump_height == 0.0);
    }
    SUBCASE("supersonic, eps = sqrt(2) at s = 1: golden-ratio unstable rate") {
        const WaveParameters wp = WaveParameters::make(std::sqrt(2.0), 1.0, g1);
        CHECK(wp.regime == Regime::Hyperbolic);
        REQUIRE(wp.decay_rate.has_value());
        CHECK(*wp.decay_rate ==
              doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-13));
        REQUIRE(wp.super_slope.has_value());
        CHECK(*wp.super_slope == doctest::Approx(2.0).epsilon(1e-13));
    }
}

TEST_CASE("weight slope: minimal-speed guard and endpoint values") {
    const WaveParameters wp = WaveParameters::make(0.5, 1.6, g1);
    // The slope at the invaded state equals the front decay rate.
    CHECK(weight_slope(0.0, wp, g1) == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
    CHECK(weight_slope(1.0, wp, g1) ==
          doctest::Approx(1.6 * 1.25 / 0.72).epsilon(1e-13));
    for (double nu = 0.0; nu <= 1.0; nu += 0.05)
        CHECK(weight_slope(nu, wp, g1) > 0.0);

    const WaveParameters off = WaveParameters::make(0.5, 1.8, g1);
    CHECK_THROWS_AS(weight_slope(0.5, off, g1), ValidationError);

    // Hyperbolic branch: eps F'(nu) / (1 - eps^2 F'(nu)).
    const WaveParameters wph = WaveParameters::make(2.0, 0.5, g1);
    CHECK(weight_slope(1.0, wph, g1) == doctest::Approx(-0.4).epsilon(1e-13));
    CHECK(weight_slope(0.75, wph, g1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));

    // Critical branch diverges at the touchdown height.
    const WaveParameters wpc = WaveParameters::make(1.0, 1.0, g1);
    CHECK_THROWS_AS(weight_slope(0.0, wpc, g1), SingularWeightError);
    CHECK(weight_slope(0.5, wpc, g1) == doctest::Approx(0.0).epsilon(1e-14));
}
