#include <doctest.h>

#include <cmath>
#include <random>

#include "mazer/mode_profile.hpp"

using mazer::ModeProfile;

TEST_CASE("mesa profile") {
    const ModeProfile p = ModeProfile::mesa(10.0);
    CHECK(p.eval(5.0) == 1.0);
    CHECK(p.eval(0.0) == 1.0);
    CHECK(p.eval(10.0) == 1.0);
    CHECK(p.eval(-1.0) == 0.0);
    CHECK(p.eval(10.5) == 0.0);
    CHECK(p.effective_support(1e-8) == std::pair{0.0, 10.0});
}

TEST_CASE("sinusoidal profile") {
    const ModeProfile p = ModeProfile::sinusoidal(1, 10.0);
    CHECK(p.eval(5.0) == doctest::Approx(1.0));
    CHECK(p.eval(0.0) == 0.0);
    CHECK(p.eval(10.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.eval(-0.1) == 0.0);
    CHECK(p.eval(10.1) == 0.0);

    const ModeProfile two = ModeProfile::sinusoidal(2, 10.0);
    CHECK(two.eval(2.5) == doctest::Approx(1.0));
    CHECK(two.eval(7.5) == doctest::Approx(-1.0));
    CHECK(two.effective_support(1e-8) == std::pair{0.0, 10.0});
}

TEST_CASE("gaussian profile") {
    const ModeProfile p = ModeProfile::gaussian(1.0, 10.0);
    CHECK(p.eval(5.0) == 1.0);
    CHECK(p.eval(6.0) == doctest::Approx(std::exp(-0.5)));
    CHECK(p.eval(4.0) == p.eval(6.0));

    auto [lo, hi] = p.effective_support(1e-8);
    const double decay = std::sqrt(2.0 * std::log(1e8));
    CHECK(hi - 5.0 >= 5.0 + decay - 1e-12); // half-width >= L/2 + sigma*sqrt(2 ln(1/eps))
    CHECK(lo == doctest::Approx(-decay));
    CHECK(hi == doctest::Approx(10.0 + decay));
}

TEST_CASE("sech2 profile") {
    const ModeProfile p = ModeProfile::sech2(1.0, 10.0);
    CHECK(p.eval(5.0) == 1.0);
    const double x = 1.7;
    const double expected = std::pow(1.0 / std::cosh(x), 2);
    CHECK(p.eval(5.0 + x) == doctest::Approx(expected));
    CHECK(p.eval(5.0 - x) == p.eval(5.0 + x));
}

TEST_CASE("custom profile clipped to the cavity") {
    const ModeProfile p = ModeProfile::custom(mazer::parse_profile_expr("1"), 10.0);
    CHECK(p.eval(5.0) == 1.0);
    CHECK(p.eval(-0.001) == 0.0);
    CHECK(p.eval(10.001) == 0.0);
    CHECK(p.effective_support(1e-8) == std::pair{0.0, 10.0});
}

TEST_CASE("custom('1') agrees with mesa pointwise") {
    const ModeProfile custom = ModeProfile::custom(mazer::parse_profile_expr("1"), 10.0);
    const ModeProfile mesa = ModeProfile::mesa(10.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> zs(-10.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double z = zs(rng);
        CHECK(custom.eval(z) == mesa.eval(z));
    }
}

TEST_CASE("custom evaluation errors carry position context") {
    const ModeProfile p = ModeProfile::custom(mazer::parse_profile_expr("1/(z-5)"), 10.0);
    CHECK_THROWS_WITH_AS(p.eval(5.0), doctest::Contains("z=5"), mazer::EvalError);
    CHECK(p.eval(6.0) == 1.0);
}

TEST_CASE("validation of constructor parameters") {
    CHECK_THROWS_AS(ModeProfile::mesa(0.0), mazer::ValidationError);
    CHECK_THROWS_AS(ModeProfile::mesa(-3.0), mazer::ValidationError);
    CHECK_THROWS_AS(ModeProfile::sech2(0.0, 10.0), mazer::ValidationError);
    CHECK_THROWS_AS(ModeProfile::gaussian(-1.0, 10.0), mazer::ValidationError);
    CHECK_THROWS_AS(ModeProfile::sinusoidal(0, 10.0), mazer::ValidationError);
    CHECK_THROWS_AS(ModeProfile::mesa(10.0).effective_support(0.0), mazer::ValidationError);
    CHECK_THROWS_AS(ModeProfile::mesa(10.0).effective_support(1.5), mazer::ValidationError);
}

TEST_CASE("outside the effective support every profile falls below epsilon") {
    const double eps = 1e-8;
    const std::vector<ModeProfile> profiles = {
        ModeProfile::mesa(10.0),
        ModeProfile::sech2(1.0, 10.0),
        ModeProfile::sech2(2.5, 1.0),
        ModeProfile::gaussian(1.0, 10.0),
        ModeProfile::gaussian(0.3, 1.0),
        ModeProfile::sinusoidal(3, 10.0),
        ModeProfile::custom(mazer::parse_profile_expr("sin(pi*z/L)^2"), 10.0),
    };
    for (const ModeProfile& p : profiles) {
        auto [lo, hi] = p.effective_support(eps);
        for (double step : {1e-6, 0.5, 3.0, 50.0}) {
            CHECK(std::fabs(p.eval(lo - step)) < eps);
            CHECK(std::fabs(p.eval(hi + step)) < eps);
        }
    }
}
